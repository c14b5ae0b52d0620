#pragma once

// Built-in fan fixtures. a7_124 is the distinguished crepant resolution of
// C^3 / mu_7 with weights (1,2,4): rays rho_1..rho_6 with
// rho_1, rho_2, rho_3 the junior points and rho_4, rho_5, rho_6 = e_3, e_2, e_1.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qbraid/fan_io.hpp"

namespace qbraid {

inline FanDocument a7_124_document() {
  FanDocument doc;
  doc.denominator = 7;
  doc.rays = {{1, 2, 4}, {2, 4, 1}, {4, 1, 2}, {0, 0, 7}, {0, 7, 0}, {7, 0, 0}};
  doc.lattice_generators = {{7, 0, 0}, {0, 7, 0}, {0, 0, 7}, {1, 2, 4}};
  doc.maximal_cones = {{0, 1, 2}, {0, 3, 4}, {1, 4, 5}, {2, 3, 5}, {0, 1, 4}, {1, 2, 5}, {0, 2, 3}};
  doc.metadata = Json{{"name", "a7_124"},
                      {"order", 7},
                      {"weights", {1, 2, 4}},
                      {"ray_labels", {"rho1", "rho2", "rho3", "rho4", "rho5", "rho6"}}};
  return doc;
}

struct FixtureInfo {
  std::string name;
  Int order;
  std::array<Int, 3> weights;
};

inline std::vector<FixtureInfo> fixture_catalog() { return {{"a7_124", 7, {1, 2, 4}}}; }

inline std::optional<FanDocument> fixture_document(const std::string& name) {
  if (name == "a7_124") return a7_124_document();
  return std::nullopt;
}

}  // namespace qbraid
