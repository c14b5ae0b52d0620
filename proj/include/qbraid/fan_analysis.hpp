#pragma once

// Orbit-cone bookkeeping on simplicial fans: star fans of rays (the torus
// invariant surfaces V(rho)), their classification, self-intersections of the
// boundary curves, total spaces of line bundles, and fan isomorphisms.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qbraid/fan.hpp"
#include "qbraid/lattice.hpp"

namespace qbraid {

inline constexpr std::size_t kNoRay = std::numeric_limits<std::size_t>::max();

// Dimension of the torus orbit O(sigma) in a 3-dimensional toric variety.
inline std::size_t orbit_dim(const Fan<3>& fan, const Cone& cone) {
  if (cone.ray_indices.empty() || !fan.has_cone(cone.ray_indices))
    throw NotInFanError("cone is not a cone of the fan");
  const auto gens = fan.generators(cone);
  return 3 - rank_of<3>(gens);
}

// Counter-clockwise angular order on Z^2 \ {0}, starting at the positive x-axis.
inline bool angle_less(const Vec<2>& a, const Vec<2>& b) {
  auto half = [](const Vec<2>& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

// A complete 2D fan with its rays in counter-clockwise cyclic order; cone i is
// spanned by rays i and i+1 (mod n). source_rays maps each 2D ray back to the
// 3D ray it came from (or to its index in an abstract input fan).
struct StarFan2D {
  std::size_t ambient_ray = kNoRay;
  std::vector<Vec<2>> rays_2d;
  std::vector<std::size_t> source_rays;

  std::size_t size() const { return rays_2d.size(); }
  const Vec<2>& ray(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(rays_2d.size());
    return rays_2d[static_cast<std::size_t>(((i % n) + n) % n)];
  }

  bool is_smooth() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (cross(ray(static_cast<std::ptrdiff_t>(i)), ray(static_cast<std::ptrdiff_t>(i) + 1)) != 1) return false;
    return true;
  }

  std::size_t position_of_source(std::size_t source) const {
    auto it = std::find(source_rays.begin(), source_rays.end(), source);
    if (it == source_rays.end()) throw NotInFanError("ray does not appear in the star fan");
    return static_cast<std::size_t>(it - source_rays.begin());
  }

  Fan<2> to_fan() const {
    Fan<2> out{Lattice<2>::standard(), rays_2d, {}};
    for (std::size_t i = 0; i < size(); ++i) out.maximal_cones.emplace_back(std::vector<std::size_t>{i, (i + 1) % size()}, 2);
    return out;
  }
};

namespace detail {

// Sorts rays counter-clockwise and rotates so the smallest source index leads.
inline StarFan2D make_cyclic(std::size_t ambient, std::vector<std::pair<Vec<2>, std::size_t>> items) {
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return angle_less(a.first, b.first); });
  auto lead = std::min_element(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  std::rotate(items.begin(), lead, items.end());
  StarFan2D out;
  out.ambient_ray = ambient;
  for (const auto& [v, s] : items) {
    out.rays_2d.push_back(v);
    out.source_rays.push_back(s);
  }
  return out;
}

// The link of a ray: for each maximal cone containing it, the pair of other rays.
inline std::vector<std::pair<std::size_t, std::size_t>> link_edges(const Fan<3>& fan, std::size_t ray) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& m : fan.maximal_cones) {
    if (!m.has_ray(ray)) continue;
    if (m.ray_indices.size() != 3) throw FanError("star fans need simplicial 3-dimensional maximal cones");
    std::vector<std::size_t> other;
    for (auto i : m.ray_indices)
      if (i != ray) other.push_back(i);
    out.emplace_back(other[0], other[1]);
  }
  return out;
}

}  // namespace detail

// V(rho) is compact iff rho lies in the interior of the support, i.e. the link
// of rho is a single closed cycle.
inline bool is_compact_ray(const Fan<3>& fan, std::size_t ray) {
  const auto edges = detail::link_edges(fan, ray);
  if (edges.size() < 3) return false;
  std::map<std::size_t, std::vector<std::size_t>> adj;
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& [v, nbrs] : adj)
    if (nbrs.size() != 2) return false;
  // Walk the cycle from any vertex; it must visit every vertex.
  std::size_t start = adj.begin()->first, prev = start, cur = adj[start][0], steps = 1;
  while (cur != start) {
    const auto& n = adj[cur];
    const std::size_t next = n[0] == prev ? n[1] : n[0];
    prev = cur;
    cur = next;
    if (++steps > adj.size()) return false;
  }
  return steps == adj.size();
}

// Images of the cones containing `ray` in the quotient lattice N / Z*ray.
inline StarFan2D star_fan(const Fan<3>& fan, std::size_t ray) {
  if (ray >= fan.rays.size()) throw NotInFanError("ray index out of range");
  if (!is_compact_ray(fan, ray)) throw NotCompactError("ray " + std::to_string(ray) + " is not interior to the support");
  const auto& lattice = fan.lattice;
  const Vec<3> c = lattice.coords_or_throw(fan.rays[ray]);
  const Mat<3> to_axis = unimodular_to_first_axis<3>(c);
  std::set<std::size_t> nbrs;
  for (auto [a, b] : detail::link_edges(fan, ray)) {
    nbrs.insert(a);
    nbrs.insert(b);
  }
  std::vector<std::pair<Vec<2>, std::size_t>> items;
  for (auto i : nbrs) {
    const Vec<3> img = apply<3>(to_axis, lattice.coords_or_throw(fan.rays[i]));
    Vec<2> v{img[1], img[2]};
    const Int g = content(v);
    if (g == 0) throw FanError("neighbouring ray is parallel to the star centre");
    v = Vec<2>{v[0] / g, v[1] / g};
    items.emplace_back(v, i);
  }
  auto star = detail::make_cyclic(ray, std::move(items));
  // The cyclic order must reproduce the link and every cone must be strictly convex.
  std::set<std::pair<std::size_t, std::size_t>> link;
  for (auto [a, b] : detail::link_edges(fan, ray)) link.insert({std::min(a, b), std::max(a, b)});
  for (std::size_t i = 0; i < star.size(); ++i) {
    const std::size_t a = star.source_rays[i], b = star.source_rays[(i + 1) % star.size()];
    if (!link.count({std::min(a, b), std::max(a, b)}) ||
        cross(star.ray(static_cast<std::ptrdiff_t>(i)), star.ray(static_cast<std::ptrdiff_t>(i) + 1)) <= 0)
      throw FanError("star of ray " + std::to_string(ray) + " is not a complete fan");
  }
  return star;
}

// Cyclic form of an abstract complete 2D fan; source_rays index its rays.
inline StarFan2D cyclic_form(const Fan<2>& fan) {
  std::vector<std::pair<Vec<2>, std::size_t>> items;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) items.emplace_back(fan.rays[i], i);
  auto star = detail::make_cyclic(kNoRay, std::move(items));
  if (star.size() != fan.maximal_cones.size()) throw FanError("2D fan is not complete");
  for (std::size_t i = 0; i < star.size(); ++i) {
    const std::size_t a = star.source_rays[i], b = star.source_rays[(i + 1) % star.size()];
    if (!fan.has_cone({a, b}) || cross(star.ray(static_cast<std::ptrdiff_t>(i)), star.ray(static_cast<std::ptrdiff_t>(i) + 1)) <= 0)
      throw FanError("2D fan is not complete");
  }
  return star;
}

// Complete 2D fan on the given rays, cones between angular neighbours.
inline Fan<2> complete_fan_2d(std::vector<Vec<2>> rays) {
  std::vector<std::size_t> order(rays.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return angle_less(rays[a], rays[b]); });
  Fan<2> out{Lattice<2>::standard(), std::move(rays), {}};
  for (std::size_t i = 0; i < order.size(); ++i)
    out.maximal_cones.emplace_back(std::vector<std::size_t>{order[i], order[(i + 1) % order.size()]}, 2);
  return out;
}

// Rays v1 = (1,0), v2 = (0,-1), v3 = (-1,-e), v4 = (0,1).
inline Fan<2> hirzebruch_fan(Int e) { return complete_fan_2d({{1, 0}, {0, -1}, {-1, checked::neg(e)}, {0, 1}}); }

inline Fan<2> projective_plane_fan() { return complete_fan_2d({{1, 0}, {0, 1}, {-1, -1}}); }

// Self-intersection c of the curve V(u) on a smooth complete toric surface,
// from the wall relation u_prev + u_next = -c * u.
inline Int curve_self_intersection(const StarFan2D& star, std::size_t index) {
  if (index >= star.size()) throw IndexError("ray index out of range");
  const auto i = static_cast<std::ptrdiff_t>(index);
  const Vec<2>& u = star.ray(i);
  const Vec<2> sum = star.ray(i - 1) + star.ray(i + 1);
  if (cross(star.ray(i - 1), u) != 1 || cross(u, star.ray(i + 1)) != 1)
    throw SmoothnessError("cones adjacent to the ray are not unimodular");
  if (cross(sum, u) != 0) throw SmoothnessError("wall relation has no integer solution");
  const Int k = u[0] != 0 ? sum[0] / u[0] : sum[1] / u[1];
  if (k * u[0] != sum[0] || k * u[1] != sum[1]) throw SmoothnessError("wall relation has no integer solution");
  return checked::neg(k);
}

enum class SurfaceKind { projective_plane, hirzebruch, other };

enum class CurveRole { section, fibre, other };

struct RoleEntry {
  CurveRole role = CurveRole::other;
  Int self_intersection = 0;
  friend bool operator==(const RoleEntry&, const RoleEntry&) = default;
};

struct SurfaceReport {
  SurfaceKind kind = SurfaceKind::other;
  Int hirzebruch_e = 0;  // meaningful only for kind == hirzebruch
  std::vector<Int> self_intersection_cycle;
  std::map<std::size_t, RoleEntry> role_table;  // source ray -> role of its curve

  std::string name() const {
    switch (kind) {
      case SurfaceKind::projective_plane:
        return "P2";
      case SurfaceKind::hirzebruch:
        return "F" + std::to_string(hirzebruch_e);
      case SurfaceKind::other:
        break;
    }
    return "other";
  }

  friend bool operator==(const SurfaceReport&, const SurfaceReport&) = default;
};

inline const char* to_string(CurveRole r) {
  switch (r) {
    case CurveRole::section:
      return "section";
    case CurveRole::fibre:
      return "fibre";
    case CurveRole::other:
      break;
  }
  return "other";
}

inline constexpr std::size_t kDefaultClassifyRayCap = 12;

// Classification by the self-intersection cycle up to rotation and reflection.
inline SurfaceReport classify_surface(const StarFan2D& star, std::size_t max_rays = kDefaultClassifyRayCap) {
  SurfaceReport rep;
  if (star.size() > max_rays) {
    if (star.is_smooth())
      for (std::size_t i = 0; i < star.size(); ++i) rep.self_intersection_cycle.push_back(curve_self_intersection(star, i));
    for (std::size_t i = 0; i < rep.self_intersection_cycle.size(); ++i)
      rep.role_table[star.source_rays[i]] = {CurveRole::other, rep.self_intersection_cycle[i]};
    return rep;
  }
  for (std::size_t i = 0; i < star.size(); ++i) rep.self_intersection_cycle.push_back(curve_self_intersection(star, i));
  const auto& c = rep.self_intersection_cycle;
  const std::size_t n = c.size();
  if (n == 3 && std::all_of(c.begin(), c.end(), [](Int x) { return x == 1; })) {
    rep.kind = SurfaceKind::projective_plane;
  } else if (n == 4) {
    // Reversal of (0,-e,0,e) is a rotation of it, so rotations suffice.
    for (std::size_t s = 0; s < 4; ++s)
      if (c[s] == 0 && c[(s + 2) % 4] == 0 && c[(s + 1) % 4] == -c[(s + 3) % 4] && c[(s + 1) % 4] <= 0) {
        rep.kind = SurfaceKind::hirzebruch;
        rep.hirzebruch_e = -c[(s + 1) % 4];
        break;
      }
  }
  for (std::size_t i = 0; i < n; ++i) {
    CurveRole role = CurveRole::other;
    if (rep.kind == SurfaceKind::hirzebruch) {
      if (c[i] == 0)
        role = CurveRole::fibre;
      else if (c[i] == -rep.hirzebruch_e)
        role = CurveRole::section;
    }
    rep.role_table[star.source_rays[i]] = {role, c[i]};
  }
  return rep;
}

// How a torus-invariant curve C = V(<k,l>) sits in one of the two surfaces.
struct CurveSide {
  std::size_t surface_ray = kNoRay;
  Int self_intersection = 0;
  CurveRole role = CurveRole::other;
  friend bool operator==(const CurveSide&, const CurveSide&) = default;
};

struct CurveDescriptor {
  Cone cone;
  std::size_t orbit_dimension = 1;
  std::optional<CurveSide> in_first;   // inside V(ray_k); empty when V(ray_k) is not compact
  std::optional<CurveSide> in_second;  // inside V(ray_l)
};

inline CurveDescriptor intersection_curve(const Fan<3>& fan, std::size_t ray_k, std::size_t ray_l) {
  if (ray_k == ray_l || ray_k >= fan.rays.size() || ray_l >= fan.rays.size())
    throw IndexError("need two distinct rays of the fan");
  if (!fan.has_cone({ray_k, ray_l}))
    throw EmptyIntersection("V(" + std::to_string(ray_k) + ") and V(" + std::to_string(ray_l) + ") do not meet in a curve");
  CurveDescriptor out;
  out.cone = fan.make_cone({ray_k, ray_l});
  out.orbit_dimension = orbit_dim(fan, out.cone);
  auto side = [&](std::size_t surface, std::size_t other) -> std::optional<CurveSide> {
    if (!is_compact_ray(fan, surface)) return std::nullopt;
    const auto star = star_fan(fan, surface);
    const auto report = classify_surface(star);
    const auto& entry = report.role_table.at(other);
    return CurveSide{surface, entry.self_intersection, entry.role};
  };
  out.in_first = side(ray_k, ray_l);
  out.in_second = side(ray_l, ray_k);
  return out;
}

// Coefficients a_rho of a torus-invariant divisor sum a_rho D_rho; rays not
// listed have coefficient 0.
struct DivisorSpec {
  std::map<std::size_t, Int> coefficients;

  Int coefficient(std::size_t ray) const {
    auto it = coefficients.find(ray);
    return it == coefficients.end() ? 0 : it->second;
  }

  static DivisorSpec uniform(std::size_t ray_count, Int a) {
    DivisorSpec d;
    for (std::size_t i = 0; i < ray_count; ++i) d.coefficients[i] = a;
    return d;
  }
};

// Fan of the total space of O(D) over a smooth 2D toric variety: ray 0 is
// (0,0,1) and ray i+1 is (u_i, -a_i); each cone <u_i, u_j> lifts to
// <(0,1), (u_i,-a_i), (u_j,-a_j)>.
inline Fan<3> line_bundle_fan(const Fan<2>& base, const DivisorSpec& divisor) {
  Fan<3> out{Lattice<3>::standard(), {{0, 0, 1}}, {}};
  for (std::size_t i = 0; i < base.rays.size(); ++i) {
    const auto u = base.lattice.primitive(base.rays[i]);
    out.rays.push_back({u[0], u[1], checked::neg(divisor.coefficient(i))});
  }
  for (const auto& m : base.maximal_cones) {
    std::vector<std::size_t> idx{0};
    for (auto i : m.ray_indices) idx.push_back(i + 1);
    out.maximal_cones.emplace_back(std::move(idx), m.ray_indices.size() + 1);
  }
  return out;
}

// A lattice isomorphism carrying fan A onto fan B. `matrix` acts on
// coordinates in the canonical lattice bases and has determinant +-1.
template <std::size_t D>
struct FanIsomorphism {
  Mat<D> matrix{};
  std::vector<std::size_t> ray_map;  // ray i of A goes to ray ray_map[i] of B
};

// Searches for a unimodular map sending rays to rays and maximal cones to
// maximal cones. Anchors on the first D rays of A that form a lattice basis
// and tries every ordered D-tuple of rays of B in lexicographic order.
template <std::size_t D>
std::optional<FanIsomorphism<D>> fan_isomorphism(const Fan<D>& a, const Fan<D>& b) {
  if (a.rays.size() != b.rays.size() || a.maximal_cones.size() != b.maximal_cones.size() || a.rays.size() < D)
    return std::nullopt;
  const std::size_t n = a.rays.size();
  std::vector<Vec<D>> ca, cb;
  for (const auto& r : a.rays) ca.push_back(a.lattice.coords_or_throw(r));
  for (const auto& r : b.rays) cb.push_back(b.lattice.coords_or_throw(r));

  // Anchor: lexicographically first D-subset of A; prefer a lattice basis.
  std::optional<std::vector<std::size_t>> anchor, fallback;
  std::vector<std::size_t> pick;
  auto choose = [&](auto&& self, std::size_t from) -> void {
    if (anchor) return;
    if (pick.size() == D) {
      Basis<D> m{};
      for (std::size_t j = 0; j < D; ++j) m[j] = ca[pick[j]];
      const Int d = checked::abs(det<D>(m));
      if (d == 1) anchor = pick;
      else if (d != 0 && !fallback) fallback = pick;
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  choose(choose, 0);
  if (!anchor) anchor = fallback;
  if (!anchor) return std::nullopt;

  Basis<D> anchor_cols{};
  for (std::size_t j = 0; j < D; ++j) anchor_cols[j] = ca[(*anchor)[j]];
  const Mat<D> anchor_mat = from_columns<D>(anchor_cols);
  const Int anchor_det = det<D>(anchor_mat);
  const Mat<D> anchor_adj = adjugate<D>(anchor_mat);

  std::set<std::vector<std::size_t>> cones_b;
  for (const auto& m : b.maximal_cones) cones_b.insert(m.ray_indices);
  std::map<Vec<D>, std::size_t> index_b;
  for (std::size_t i = 0; i < n; ++i) index_b[cb[i]] = i;

  std::vector<std::size_t> target;
  std::vector<char> used(n, 0);
  std::optional<FanIsomorphism<D>> found;
  auto attempt = [&]() {
    Basis<D> tcols{};
    for (std::size_t j = 0; j < D; ++j) tcols[j] = cb[target[j]];
    const Mat<D> prod = multiply<D>(from_columns<D>(tcols), anchor_adj);
    Mat<D> m{};
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) {
        if (prod[i][j] % anchor_det != 0) return;
        m[i][j] = prod[i][j] / anchor_det;
      }
    if (checked::abs(det<D>(m)) != 1) return;
    std::vector<std::size_t> ray_map(n);
    std::vector<char> hit(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto it = index_b.find(apply<D>(m, ca[i]));
      if (it == index_b.end() || hit[it->second]) return;
      hit[it->second] = 1;
      ray_map[i] = it->second;
    }
    for (const auto& cone : a.maximal_cones) {
      std::vector<std::size_t> img;
      for (auto i : cone.ray_indices) img.push_back(ray_map[i]);
      std::sort(img.begin(), img.end());
      if (!cones_b.count(img)) return;
    }
    found = FanIsomorphism<D>{m, std::move(ray_map)};
  };
  auto assign = [&](auto&& self) -> void {
    if (found) return;
    if (target.size() == D) {
      attempt();
      return;
    }
    for (std::size_t i = 0; i < n && !found; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      target.push_back(i);
      self(self);
      target.pop_back();
      used[i] = 0;
    }
  };
  assign(assign);
  return found;
}

}  // namespace qbraid
