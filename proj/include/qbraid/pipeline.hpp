#pragma once

// End-to-end verification of a resolution fan: crepancy, smoothness and fan
// condition; exceptional surfaces and their intersections; graded Homs, the
// Euler pairing and twist matrices; and, for a cyclic configuration of three
// surfaces, the twist relations, K-class checks, orthogonality and the
// G = Br_4 certificate. Each section is also usable on its own.

#include <chrono>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qbraid/braid_group.hpp"
#include "qbraid/fan_analysis.hpp"
#include "qbraid/fan_io.hpp"
#include "qbraid/quotient_fan.hpp"
#include "qbraid/sheaf_calculus.hpp"

namespace qbraid {

inline constexpr const char* kNotApplicableNote = "cyclic 3-surface checks: not applicable";

inline Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) out.push_back(m.row(i));
  return out;
}

inline Json checks_json(const RelationReport& rep) {
  Json out = Json::object();
  for (const auto& c : rep.checks) out[c.name] = c.passed;
  return out;
}

inline Json graded_json(const GradedDims& g) {
  Json out = Json::object();
  for (auto [deg, d] : g.dims) out[std::to_string(deg)] = d;
  return out;
}

inline Json surfaces_json(const ConfigData& cfg) {
  Json out = Json::array();
  for (std::size_t k = 0; k < cfg.surface_count(); ++k) {
    const auto& s = cfg.surfaces[k];
    Json roles = Json::array();
    for (const auto& [ray, entry] : s.report.role_table)
      roles.push_back({{"ray", ray}, {"role", to_string(entry.role)}, {"self_intersection", entry.self_intersection}});
    Json item{{"index", k},
              {"ray", s.ray},
              {"kind", s.report.name()},
              {"self_intersection_cycle", s.report.self_intersection_cycle},
              {"roles", roles}};
    if (s.report.kind == SurfaceKind::hirzebruch) item["hirzebruch_e"] = s.report.hirzebruch_e;
    out.push_back(std::move(item));
  }
  return out;
}

inline Json intersections_json(const ConfigData& cfg) {
  Json curves = Json::array();
  for (const auto& [key, c] : cfg.curves) {
    curves.push_back({{"surfaces", {key.first, key.second}},
                      {"rays", {cfg.surfaces[key.first].ray, cfg.surfaces[key.second].ray}},
                      {"self_intersection_in_first", c.self_intersection_in_k},
                      {"role_in_first", to_string(c.role_in_k)},
                      {"self_intersection_in_second", c.self_intersection_in_l},
                      {"role_in_second", to_string(c.role_in_l)}});
  }
  return Json{{"curves", curves}, {"triple_point", cfg.triple_point}};
}

inline Json homs_json(const ConfigData& cfg) {
  Json out = Json::array();
  for (std::size_t k = 0; k < cfg.surface_count(); ++k)
    for (std::size_t l = 0; l < cfg.surface_count(); ++l) {
      const auto g = graded_hom(cfg, k, l);
      out.push_back({{"from", k}, {"to", l}, {"dims", graded_json(g)}, {"euler", g.euler()}});
    }
  return out;
}

// A cyclic configuration: three surfaces, pairwise meeting in curves, with a
// common point.
inline bool is_cyclic_configuration(const ConfigData& cfg) {
  return cfg.surface_count() == 3 && cfg.has_curve(0, 1) && cfg.has_curve(1, 2) && cfg.has_curve(0, 2) && cfg.triple_point;
}

// Contents of relations.json: chi, the twist matrices, their properties and
// (for three surfaces) the relation suite.
inline Json twists_json(const ConfigData& cfg) {
  const IntMatrix chi = euler_matrix(cfg);
  Json out{{"euler_matrix", matrix_json(chi)}, {"antisymmetric_zero_diagonal", is_antisymmetric_zero_diagonal(chi)}};
  if (!is_antisymmetric_zero_diagonal(chi)) return out;
  const auto ts = twist_matrices(chi);
  Json mats = Json::array();
  for (const auto& t : ts) mats.push_back(matrix_json(t));
  out["twists"] = mats;
  out["properties"] = checks_json(twist_matrix_properties(ts));
  if (ts.size() == 3) out["relations"] = checks_json(verify_twist_relations(ts[0], ts[1], ts[2]));
  return out;
}

inline Json derivation_json(const Derivation& d) {
  Json steps = Json::array();
  for (const auto& s : d.trace)
    steps.push_back({{"relator", s.relator},
                     {"inverted", s.inverted},
                     {"rotation", s.rotation},
                     {"split", s.split},
                     {"position", s.position},
                     {"before", s.before.to_string()},
                     {"after", s.after.to_string()}});
  const char* status = d.status == SearchStatus::found ? "found" : (d.status == SearchStatus::exhausted ? "exhausted" : "budget_exceeded");
  return Json{{"status", status}, {"states_explored", d.states_explored}, {"trace", steps}};
}

inline Json homomorphism_json(const HomomorphismCheck& h, const std::vector<Word>& images) {
  Json imgs = Json::array();
  for (const auto& w : images) imgs.push_back(w.to_string());
  Json rels = Json::array();
  for (const auto& r : h.relators) {
    Json item{{"name", r.name}, {"relator", r.relator.to_string()}, {"image", r.image.to_string()}, {"result", to_string(r.answer.triviality)}};
    if (r.answer.derivation) item["derivation"] = derivation_json(*r.answer.derivation);
    rels.push_back(std::move(item));
  }
  return Json{{"verdict", to_string(h.verdict)}, {"images", imgs}, {"relators", rels}};
}

inline Json iso_certificate_json(const IsoCertificate& c, const IsoOptions& opts) {
  auto words = [](const std::vector<Word>& ws) {
    Json out = Json::array();
    for (const auto& w : ws) out.push_back(w.to_string());
    return out;
  };
  Json out{{"phi", homomorphism_json(c.phi, opts.phi_images)},
           {"psi", homomorphism_json(c.psi, opts.psi_images)},
           {"composites",
            {{"verdict", c.composites.passed ? "pass" : "fail"},
             {"psi_after_phi", words(c.composites.psi_after_phi)},
             {"phi_after_psi", words(c.composites.phi_after_psi)}}},
           {"k_theory", {{"verdict", c.k_theory.all_passed() ? "pass" : "fail"}, {"relations", checks_json(c.k_theory)}}},
           {"generation", {{"g3_in_g1_g2_h", c.g3_in_new_generators.to_string()}, {"h", "2 3 -2"}}},
           {"budget", {{"max_word_length", opts.budget.max_word_length}, {"max_states", opts.budget.max_states}}},
           {"verdict", to_string(c.verdict)}};
  int passes = 0;
  for (Verdict v : {c.phi.verdict, c.psi.verdict, c.composites.passed ? Verdict::holds : Verdict::fails,
                    c.k_theory.all_passed() ? Verdict::holds : Verdict::fails})
    passes += v == Verdict::holds ? 1 : 0;
  out["parts_passed"] = std::to_string(passes) + "/4";
  if (!c.failing_part.empty()) out["failing_part"] = c.failing_part;
  return out;
}

struct VerifyOptions {
  bool stable_output = false;
  IsoOptions iso{};
};

struct VerifyResult {
  Json report;
  std::vector<std::string> failures;
  bool verified() const { return failures.empty(); }
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

inline VerifyResult verify_fan(const Fan<3>& fan, const VerifyOptions& opts = {}) {
  VerifyResult res;
  Json& rep = res.report;
  Json timings = Json::object();
  rep["fan"] = {{"denominator", fan.lattice.denominator()},
                {"rays", fan.rays.size()},
                {"maximal_cones", fan.maximal_cones.size()},
                {"index_in_refinement", fan.lattice.index_in_refinement()}};
  rep["notes"] = Json::array();
  auto fail = [&](const std::string& name) { res.failures.push_back(name); };

  // Runs a stage; a library error inside it is a verification failure.
  auto stage = [&](const std::string& name, const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    try {
      body();
    } catch (const Error& e) {
      rep[name] = {{"passed", false}, {"error", e.what()}};
      fail(name);
      ok = false;
    }
    timings[name] = detail::elapsed_ms(t0);
    return ok;
  };

  stage("crepancy", [&] {
    Json bad = Json::array();
    const Int r = fan.lattice.denominator();
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
      const auto& v = fan.rays[i];
      if (checked::add(checked::add(v[0], v[1]), v[2]) != r) bad.push_back(i);
    }
    rep["crepancy"] = {{"passed", bad.empty()}, {"rays_off_junior_plane", bad}};
    if (!bad.empty()) fail("crepancy");
  });

  stage("smoothness", [&] {
    Json vols = Json::array(), bad = Json::array();
    for (std::size_t c = 0; c < fan.maximal_cones.size(); ++c) {
      const Int v = normalized_volume<3>(fan.maximal_cones[c], fan.rays, fan.lattice);
      vols.push_back(v);
      if (v != 1) bad.push_back(c);
    }
    rep["smoothness"] = {{"passed", bad.empty()}, {"normalized_volumes", vols}, {"singular_cones", bad}};
    if (!bad.empty()) fail("smoothness");
  });

  stage("fan_condition", [&] {
    const std::string why = fan_condition_violation(fan);
    rep["fan_condition"] = {{"passed", why.empty()}};
    if (!why.empty()) {
      rep["fan_condition"]["violation"] = why;
      fail("fan_condition");
    }
  });

  if (!res.verified()) {
    rep["notes"].push_back("geometric checks skipped: the fan is not a smooth crepant fan");
  } else {
    ConfigData cfg;
    const bool have_cfg = stage("surfaces", [&] {
      cfg = build_config(fan);
      rep["surfaces"] = surfaces_json(cfg);
    });
    if (have_cfg) {
      stage("intersections", [&] { rep["intersections"] = intersections_json(cfg); });
      stage("homs", [&] {
        rep["homs"] = homs_json(cfg);
        bool serre = true;
        for (std::size_t k = 0; k < cfg.surface_count(); ++k)
          for (std::size_t l = 0; l < cfg.surface_count(); ++l)
            if (k != l && graded_hom(cfg, k, l).serre_dual() != graded_hom(cfg, l, k)) serre = false;
        rep["serre_symmetry"] = serre;
        if (!serre) fail("serre_symmetry");
      });
      stage("twists", [&] {
        Json t = twists_json(cfg);
        if (!t["antisymmetric_zero_diagonal"].get<bool>()) fail("euler_matrix");
        for (const char* key : {"properties", "relations"})
          if (t.contains(key))
            for (auto& [name, ok] : t[key].items())
              if (!ok.get<bool>()) fail(std::string(key) + "." + name);
        rep["twists"] = std::move(t);
      });
      if (is_cyclic_configuration(cfg)) {
        const IntMatrix chi = euler_matrix(cfg);
        stage("twisted_classes", [&] {
          const auto tc = twisted_class_checks(cfg, chi);
          rep["twisted_classes"] = {{"checks", checks_json(tc.checks)},
                                    {"t1_e2", tc.t1_e2},
                                    {"t2_inverse_e1", tc.t2_inv_e1},
                                    {"t2_e3", tc.t2_e3},
                                    {"chi_e3_t1_e2", tc.chi_e3_t1_e2},
                                    {"chi_e1_t2_e3", tc.chi_e1_t2_e3}};
          for (const auto& c : tc.checks.checks)
            if (!c.passed) fail("twisted_classes." + c.name);
        });
        stage("orthogonality", [&] {
          const auto o = orthogonality_check(cfg);
          rep["orthogonality"] = {{"degrees", {o.degree_on_c13, o.degree_on_c23}},
                                  {"cohomology", {o.cohomology.h0, o.cohomology.h1}},
                                  {"passed", o.orthogonal}};
          if (!o.orthogonal) fail("orthogonality");
        });
        stage("iso_certificate", [&] {
          const auto cert = verify_iso_G_Br4(twist_matrices(chi), opts.iso);
          rep["iso_certificate"] = iso_certificate_json(cert, opts.iso);
          if (cert.verdict != Verdict::holds) fail("iso_certificate." + cert.failing_part);
        });
      } else {
        rep["notes"].push_back(kNotApplicableNote);
      }
    }
  }

  rep["failures"] = res.failures;
  rep["verified"] = res.verified();
  if (!opts.stable_output) rep["timings_ms"] = timings;
  return res;
}

// Resolves C^3 / mu_r and returns all crepant triangulation fans.
inline std::vector<Fan<3>> resolution_fans(const QuotientData& q) {
  const auto lattice = build_lattice(q);
  std::vector<Fan<3>> out;
  for (const auto& t : enumerate_unimodular_triangulations(q)) out.push_back(resolution_fan(t, lattice));
  return out;
}

}  // namespace qbraid
