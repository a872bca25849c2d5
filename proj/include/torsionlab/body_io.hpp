#pragma once

#include <string>

#include "torsionlab/body.hpp"

namespace tlab {

/// Body documents are JSON with two kinds:
///
///   { "n": 2, "kind": "radial-modes", "base": 1.0, "resolution": 512,
///     "modes": [ { "degree": 2, "m": 0, "amplitude": 0.05 } ] }
///
/// r(xi) = base + sum a_{k,m} Y_{k,m}(xi) with the orthonormal real basis;
/// for n = 2, m = 0 is the cos branch and m = 1 the sin branch, for n = 3,
/// m runs in [-degree, degree].
///
///   { "n": 2, "kind": "radial-grid", "resolution": 256,
///     "values": [ ... ] }
///
/// Grid values live on the canonical quadrature grid of the given
/// resolution: uniform angles theta_i = 2 pi i / resolution for n = 2;
/// `resolution` Gauss-Legendre latitude rings times 2 * resolution uniform
/// longitudes in ring-major order for n = 3.
///
/// `base` defaults to 1 and `resolution` to the dimension default
/// (512 for n = 2, 64 for n = 3).
StarBody body_from_json(const std::string& text);

/// Harmonic-representation export; reading it back reproduces the body.
std::string body_to_json(const StarBody& body);

}  // namespace tlab
