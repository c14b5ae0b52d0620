#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "qbraid/lattice.hpp"

namespace qbraid {

// A simplicial fan: primitive rays (scaled by the lattice denominator) and
// its maximal cones. Lower-dimensional cones are implied as faces.
template <std::size_t D>
struct Fan {
  Lattice<D> lattice;
  std::vector<Vec<D>> rays;
  std::vector<Cone> maximal_cones;

  std::span<const Vec<D>> ray_span() const { return rays; }

  std::vector<Vec<D>> generators(const Cone& c) const {
    std::vector<Vec<D>> out;
    for (auto i : c.ray_indices) out.push_back(rays.at(i));
    return out;
  }

  // True when the index set spans a face of some maximal cone.
  bool has_cone(std::vector<std::size_t> indices) const {
    std::sort(indices.begin(), indices.end());
    return std::any_of(maximal_cones.begin(), maximal_cones.end(), [&](const Cone& m) {
      return std::includes(m.ray_indices.begin(), m.ray_indices.end(), indices.begin(), indices.end());
    });
  }

  Cone make_cone(std::vector<std::size_t> indices) const {
    std::vector<Vec<D>> gens;
    for (auto i : indices) gens.push_back(rays.at(i));
    return Cone(std::move(indices), rank_of<D>(gens));
  }

  // Every cone of the fan (all faces of maximal cones, origin excluded).
  std::vector<Cone> all_cones() const {
    std::set<std::vector<std::size_t>> seen;
    for (const auto& m : maximal_cones) {
      const auto& r = m.ray_indices;
      for (unsigned mask = 1; mask < (1u << r.size()); ++mask) {
        std::vector<std::size_t> face;
        for (std::size_t b = 0; b < r.size(); ++b)
          if (mask & (1u << b)) face.push_back(r[b]);
        seen.insert(face);
      }
    }
    std::vector<Cone> out;
    for (const auto& f : seen) out.push_back(make_cone(f));
    return out;
  }

  // Maximal cones containing the ray, with the rays they use, reindexed in
  // the original order.
  Fan star_closed_subfan(std::size_t ray) const {
    std::vector<Cone> kept;
    std::set<std::size_t> used;
    for (const auto& m : maximal_cones)
      if (m.has_ray(ray)) {
        kept.push_back(m);
        used.insert(m.ray_indices.begin(), m.ray_indices.end());
      }
    if (kept.empty()) throw NotInFanError("ray lies in no maximal cone");
    std::vector<std::size_t> remap(rays.size(), rays.size());
    Fan out{lattice, {}, {}};
    for (auto i : used) {
      remap[i] = out.rays.size();
      out.rays.push_back(rays[i]);
    }
    for (const auto& m : kept) {
      std::vector<std::size_t> idx;
      for (auto i : m.ray_indices) idx.push_back(remap[i]);
      out.maximal_cones.emplace_back(std::move(idx), m.dimension);
    }
    return out;
  }
};

// Checks the fan condition for a 3D simplicial fan whose rays lie in an open
// half-space: every pair of maximal cones meets in the cone over their shared
// rays. Returns a description of the first violation, or empty.
inline std::string fan_condition_violation(const Fan<3>& fan) {
  Vec<3> h{};
  for (const auto& r : fan.rays) h = h + r;
  for (const auto& r : fan.rays)
    if (dot(h, r) <= 0) return "rays do not lie in an open half-space";
  const auto& cones = fan.maximal_cones;
  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = a + 1; b < cones.size(); ++b) {
      const auto ga = fan.generators(cones[a]);
      const auto gb = fan.generators(cones[b]);
      // Unshared rays of either cone must avoid the other cone entirely.
      for (auto i : cones[b].ray_indices)
        if (!cones[a].has_ray(i) && contains<3>(ga, fan.rays[i]) != Containment::outside)
          return "ray " + std::to_string(i) + " meets a maximal cone it does not belong to";
      for (auto i : cones[a].ray_indices)
        if (!cones[b].has_ray(i) && contains<3>(gb, fan.rays[i]) != Containment::outside)
          return "ray " + std::to_string(i) + " meets a maximal cone it does not belong to";
      // Interiors must be weakly separated by a plane through a facet.
      auto separated_by = [&](const std::vector<Vec<3>>& own, const std::vector<Vec<3>>& other) {
        for (std::size_t i = 0; i < own.size(); ++i)
          for (std::size_t j = i + 1; j < own.size(); ++j) {
            const Vec<3> n = cross(own[i], own[j]);
            int s_own = 0;
            bool ok = true;
            for (const auto& v : own) {
              const Int d = dot(n, v);
              if (d != 0) s_own = d > 0 ? 1 : -1;
            }
            for (const auto& v : other) {
              const Int d = dot(n, v);
              if ((d > 0 && s_own > 0) || (d < 0 && s_own < 0)) ok = false;
            }
            if (ok && s_own != 0) return true;
          }
        return false;
      };
      if (!separated_by(ga, gb) && !separated_by(gb, ga))
        return "maximal cones " + std::to_string(a) + " and " + std::to_string(b) + " overlap";
    }
  return {};
}

}  // namespace qbraid
