#pragma once

// Fans of cyclic quotient singularities C^3 / mu_r and their crepant toric
// resolutions, obtained as unimodular triangulations of the junior simplex.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qbraid/fan.hpp"
#include "qbraid/lattice.hpp"

namespace qbraid {

// mu_r acting on C^3 by diag(xi^a, xi^b, xi^c).
struct QuotientData {
  Int order = 1;
  std::array<Int, 3> weights{};

  QuotientData() = default;
  QuotientData(Int r, std::array<Int, 3> w) : order(r), weights(w) {
    if (r < 1) throw LatticeError("group order must be positive");
    for (Int x : w)
      if (x < 0 || x >= r) throw LatticeError("weights must lie in [0, r)");
  }

  bool is_calabi_yau() const { return checked::mod(weights[0] + weights[1] + weights[2], order) == 0; }

  // Scaled numerators (k*a mod r, k*b mod r, k*c mod r) of the k-th group element.
  Vec<3> element(Int k) const {
    return {checked::mod(checked::mul(k, weights[0]), order), checked::mod(checked::mul(k, weights[1]), order),
            checked::mod(checked::mul(k, weights[2]), order)};
  }
};

inline Lattice<3> build_lattice(const QuotientData& q) {
  auto gens = Lattice<3>::standard_generators(q.order);
  for (Int k = 1; k < q.order; ++k) gens.push_back(q.element(k));
  return Lattice<3>(q.order, std::move(gens));
}

// Scaled junior points: group elements whose scaled coordinates sum to r,
// ordered by k. Coordinate rays are excluded.
inline std::vector<Vec<3>> junior_rays(const QuotientData& q) {
  if (!q.is_calabi_yau()) throw CrepancyError("weights do not sum to 0 mod r; the quotient is not Calabi-Yau");
  std::vector<Vec<3>> out;
  for (Int k = 1; k < q.order; ++k) {
    const Vec<3> v = q.element(k);
    if (v[0] + v[1] + v[2] == q.order) out.push_back(v);
  }
  return out;
}

struct Triangulation {
  Int denominator = 1;
  std::vector<Vec<3>> points;  // scaled by denominator
  std::vector<std::array<std::size_t, 3>> triangles;  // sorted index triples, sorted list

  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

using ResolutionFan = Fan<3>;

namespace detail {

inline int orientation(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c) {
  const Int d = dot(cross(a, b), c);
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

// Two counter-clockwise triangles have disjoint interiors iff some edge line of
// one of them weakly separates the other.
inline bool interiors_disjoint(const std::array<Vec<3>, 3>& t, const std::array<Vec<3>, 3>& u) {
  auto separates = [](const std::array<Vec<3>, 3>& own, const std::array<Vec<3>, 3>& other) {
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& p = own[i];
      const auto& q = own[(i + 1) % 3];
      if (std::all_of(other.begin(), other.end(), [&](const Vec<3>& v) { return orientation(p, q, v) <= 0; }))
        return true;
    }
    return false;
  };
  return separates(t, u) || separates(u, t);
}

}  // namespace detail

inline constexpr std::size_t kDefaultTriangulationPointCap = 16;

// All triangulations of the junior simplex that use every junior point and
// consist of normalized-area-1 triangles, in canonical sorted order.
inline std::vector<Triangulation> enumerate_unimodular_triangulations(
    const QuotientData& q, std::size_t point_cap = kDefaultTriangulationPointCap) {
  const auto junior = junior_rays(q);
  const Int r = q.order;
  if (junior.size() + 3 > point_cap)
    throw SizeError(std::to_string(junior.size() + 3) + " junior points exceed the cap of " + std::to_string(point_cap));
  for (const auto& v : junior)
    if (std::any_of(v.begin(), v.end(), [](Int x) { return x == 0; }))
      throw BoundaryPointError("junior point on the boundary of the simplex; boundary refinement is unsupported");

  const Lattice<3> lattice = build_lattice(q);
  std::vector<Vec<3>> pts = junior;
  for (std::size_t i = 0; i < 3; ++i) {
    Vec<3> e{};
    e[i] = r;
    pts.push_back(e);
  }
  const std::size_t n = pts.size();
  const std::size_t c0 = n - 3, c1 = n - 2, c2 = n - 1;

  // Every unimodular triangle, stored counter-clockwise.
  std::vector<std::array<std::size_t, 3>> tris;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_edge;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Int d = dot(cross(pts[i], pts[j]), pts[k]);
        if (checked::abs(d) != lattice.basis_determinant()) continue;
        std::array<std::size_t, 3> t = d > 0 ? std::array{i, j, k} : std::array{i, k, j};
        const std::size_t id = tris.size();
        tris.push_back(t);
        for (std::size_t e = 0; e < 3; ++e) by_edge[{t[e], t[(e + 1) % 3]}].push_back(id);
      }
  auto coords = [&](std::size_t id) {
    return std::array<Vec<3>, 3>{pts[tris[id][0]], pts[tris[id][1]], pts[tris[id][2]]};
  };
  std::vector<std::vector<char>> compatible(tris.size(), std::vector<char>(tris.size(), 0));
  for (std::size_t a = 0; a < tris.size(); ++a)
    for (std::size_t b = a + 1; b < tris.size(); ++b)
      compatible[a][b] = compatible[b][a] = detail::interiors_disjoint(coords(a), coords(b));

  std::vector<Triangulation> out;
  std::vector<std::size_t> chosen;
  using Edge = std::pair<std::size_t, std::size_t>;
  // Directed edges still waiting for a triangle on their left.
  std::set<Edge> open{{c0, c1}, {c1, c2}, {c2, c0}};

  auto search = [&](auto&& self) -> void {
    if (open.empty()) {
      Triangulation t{r, pts, {}};
      for (auto id : chosen) {
        auto tri = tris[id];
        std::sort(tri.begin(), tri.end());
        t.triangles.push_back(tri);
      }
      std::sort(t.triangles.begin(), t.triangles.end());
      out.push_back(std::move(t));
      return;
    }
    const Edge need = *open.begin();
    auto it = by_edge.find(need);
    if (it == by_edge.end()) return;
    for (auto id : it->second) {
      if (!std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return compatible[id][c] != 0; })) continue;
      const auto& t = tris[id];
      std::vector<Edge> removed, added;
      for (std::size_t e = 0; e < 3; ++e) {
        const Edge edge{t[e], t[(e + 1) % 3]};
        if (open.erase(edge)) {
          removed.push_back(edge);
        } else {
          const Edge back{edge.second, edge.first};
          open.insert(back);
          added.push_back(back);
        }
      }
      chosen.push_back(id);
      self(self);
      chosen.pop_back();
      for (const auto& e : added) open.erase(e);
      for (const auto& e : removed) open.insert(e);
    }
  };
  search(search);
  std::sort(out.begin(), out.end(), [](const Triangulation& a, const Triangulation& b) { return a.triangles < b.triangles; });
  return out;
}

// The fan over a unimodular triangulation of the junior simplex.
inline ResolutionFan resolution_fan(const Triangulation& t, const Lattice<3>& lattice) {
  if (t.denominator != lattice.denominator()) throw FanError("triangulation and lattice use different denominators");
  ResolutionFan fan{lattice, t.points, {}};
  Int area = 0;
  for (const auto& tri : t.triangles) {
    if (tri[0] >= t.points.size() || tri[1] >= t.points.size() || tri[2] >= t.points.size())
      throw FanError("triangle index out of range");
    Cone c({tri[0], tri[1], tri[2]}, 3);
    Int vol = 0;
    try {
      vol = normalized_volume<3>(c, fan.rays, lattice);
    } catch (const DimensionError&) {
      throw FanError("degenerate triangle");
    }
    if (vol != 1) throw FanError("triangle of normalized area " + std::to_string(vol) + " is not unimodular");
    area += vol;
    fan.maximal_cones.push_back(std::move(c));
  }
  if (area != lattice.index_in_refinement())
    throw FanError("triangles cover area " + std::to_string(area) + " of " + std::to_string(lattice.index_in_refinement()));
  if (auto why = fan_condition_violation(fan); !why.empty()) throw FanError(why);
  return fan;
}

// Rays of the resolution fan that are not coordinate rays; each gives a
// compact exceptional surface.
inline std::vector<std::size_t> exceptional_rays(const ResolutionFan& fan) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& v = fan.rays[i];
    const int nonzero = static_cast<int>(std::count_if(v.begin(), v.end(), [](Int x) { return x != 0; }));
    if (nonzero > 1) out.push_back(i);
  }
  return out;
}

}  // namespace qbraid
