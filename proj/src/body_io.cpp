#include "torsionlab/body_io.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace tlab {

namespace {

using nlohmann::json;

int default_resolution(int n) { return n == 2 ? 512 : 64; }

StarBody from_modes_doc(const json& doc, int n, int resolution) {
  const double base = doc.value("base", 1.0);
  int kmax = 2;
  for (const auto& m : doc.at("modes")) kmax = std::max(kmax, m.at("degree").get<int>());

  auto grid = make_grid(n, resolution);
  if (kmax > grid->max_degree())
    throw std::invalid_argument("body_from_json: mode degree exceeds the grid resolution");
  ModeVector modes(n, kmax);
  modes.at(0, 0) = base * std::sqrt(n * unit_ball_volume(n));
  for (const auto& m : doc.at("modes")) {
    const int degree = m.at("degree").get<int>();
    const int order = m.value("m", 0);
    modes.at(degree, order) += m.at("amplitude").get<double>();
  }
  return from_modes(modes, std::move(grid));
}

StarBody from_grid_doc(const json& doc, int n, int resolution) {
  auto grid = make_grid(n, resolution);
  const auto& values = doc.at("values");
  if (static_cast<int>(values.size()) != grid->node_count())
    throw std::invalid_argument("body_from_json: values length does not match the grid (" +
                                std::to_string(grid->node_count()) + " nodes expected)");
  SurfaceField r;
  r.grid = grid;
  r.values.resize(grid->node_count());
  for (int i = 0; i < grid->node_count(); ++i) r.values[i] = values.at(i).get<double>();
  return from_radial(r, grid->max_degree());
}

}  // namespace

StarBody body_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("body_from_json: ") + e.what());
  }
  try {
    const int n = doc.at("n").get<int>();
    if (n != 2 && n != 3) throw std::invalid_argument("body_from_json: n must be 2 or 3");
    const std::string kind = doc.at("kind").get<std::string>();
    const int resolution = doc.value("resolution", default_resolution(n));
    if (kind == "radial-modes") return from_modes_doc(doc, n, resolution);
    if (kind == "radial-grid") return from_grid_doc(doc, n, resolution);
    throw std::invalid_argument("body_from_json: kind must be radial-modes or radial-grid");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("body_from_json: ") + e.what());
  }
}

std::string body_to_json(const StarBody& body) {
  json doc;
  doc["n"] = body.n;
  doc["kind"] = "radial-modes";
  doc["base"] = 0.0;
  doc["resolution"] = body.grid->resolution;
  json modes = json::array();
  const auto& a = body.modes.coeffs();
  for (int b = 0; b < body.modes.size(); ++b) {
    if (a[b] == 0.0) continue;
    const int degree = body.modes.degree_of(b);
    int order;
    if (body.n == 2) {
      order = (degree == 0) ? 0 : (b - (2 * degree - 1));
    } else {
      order = b - degree * degree - degree;
    }
    modes.push_back({{"degree", degree}, {"m", order}, {"amplitude", a[b]}});
  }
  doc["modes"] = modes;
  return doc.dump(2);
}

}  // namespace tlab
