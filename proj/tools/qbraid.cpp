// qbraid: command-line front end.
// Exit codes: 0 verified, 1 refuted, 2 operational error.

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbraid/braid_group.hpp"
#include "qbraid/fan_io.hpp"
#include "qbraid/fixtures.hpp"
#include "qbraid/pipeline.hpp"
#include "qbraid/quotient_fan.hpp"

namespace {

using namespace qbraid;

constexpr int kVerified = 0;
constexpr int kRefuted = 1;
constexpr int kOperational = 2;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::array<Int, 3> parse_weights(const std::string& text) {
  std::array<Int, 3> w{};
  std::stringstream ss(text);
  std::string tok;
  std::size_t n = 0;
  while (std::getline(ss, tok, ',')) {
    if (n == 3) throw SchemaError("weights must be three comma-separated integers");
    try {
      std::size_t used = 0;
      w[n] = std::stoll(tok, &used);
      if (used != tok.size()) throw SchemaError("bad weight '" + tok + "'");
    } catch (const std::logic_error&) {
      throw SchemaError("bad weight '" + tok + "'");
    }
    ++n;
  }
  if (n != 3) throw SchemaError("weights must be three comma-separated integers");
  return w;
}

// Fan input shared by the analysis subcommands.
struct FanSource {
  std::string path;
  std::string fixture;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--fan", path, "FanDocument JSON file");
    auto* x = cmd->add_option("--fixture", fixture, "built-in fixture name (a7_124)");
    f->excludes(x);
  }

  bool given() const { return !path.empty() || !fixture.empty(); }

  Fan<3> load(const std::string& default_fixture = "") const {
    if (!path.empty()) return to_fan(load_fan_document(path));
    const std::string name = fixture.empty() ? default_fixture : fixture;
    if (name.empty()) throw ConfigError("one of --fan or --fixture is required");
    auto doc = fixture_document(name);
    if (!doc) throw ConfigError("unknown fixture '" + name + "'");
    return to_fan(*doc);
  }
};

int cmd_resolve(Int r, const std::string& weights_text, bool all, std::optional<std::size_t> index,
                const std::string& fixture, const std::string& out) {
  const QuotientData q(r, parse_weights(weights_text));
  if (!q.is_calabi_yau()) throw CrepancyError("weights do not sum to 0 mod r; no crepant resolution of this form");
  if (!fixture.empty()) {
    for (const auto& info : fixture_catalog())
      if (info.name == fixture) {
        if (info.order != q.order || info.weights != q.weights)
          throw ConfigError("fixture '" + fixture + "' does not describe this quotient");
        write_output(serialize(*fixture_document(fixture)), out);
        return kVerified;
      }
    throw ConfigError("unknown fixture '" + fixture + "'");
  }
  const auto fans = resolution_fans(q);
  if (fans.empty()) {
    std::cerr << "no crepant unimodular triangulation found\n";
    return kRefuted;
  }
  auto meta = [&](std::size_t i) {
    return Json{{"order", q.order}, {"weights", q.weights}, {"triangulation_index", i}, {"triangulation_count", fans.size()}};
  };
  if (all) {
    Json docs = Json::array();
    for (std::size_t i = 0; i < fans.size(); ++i) docs.push_back(to_json(from_fan(fans[i], meta(i))));
    write_output(dump(docs), out);
    return kVerified;
  }
  const std::size_t k = index.value_or(0);
  if (k >= fans.size())
    throw IndexError("triangulation index " + std::to_string(k) + " out of range (" + std::to_string(fans.size()) + " found)");
  write_output(serialize(from_fan(fans[k], meta(k))), out);
  return kVerified;
}

int cmd_verify(const FanSource& src, bool stable, const std::string& out) {
  const auto fan = src.load();
  VerifyOptions opts;
  opts.stable_output = stable;
  const auto res = verify_fan(fan, opts);
  write_output(dump(res.report), out);
  for (const auto& note : res.report["notes"]) std::cerr << note.get<std::string>() << "\n";
  if (!res.verified()) {
    std::cerr << "verification failed:";
    for (const auto& f : res.failures) std::cerr << " " << f;
    std::cerr << "\n";
    return kRefuted;
  }
  return kVerified;
}

int cmd_word(int strands, const std::string& text) {
  const Word w = Word::parse(text);
  std::cout << (braid_is_trivial(strands, w) ? "trivial" : "nontrivial") << "\n";
  return kVerified;
}

int cmd_iso(const FanSource& src, const std::string& out) {
  const auto cfg = build_config(src.load("a7_124"));
  if (!is_cyclic_configuration(cfg)) throw ConfigError(kNotApplicableNote);
  IsoOptions opts;
  const auto cert = verify_iso_G_Br4(twist_matrices(euler_matrix(cfg)), opts);
  const Json j = iso_certificate_json(cert, opts);
  write_output(dump(j), out);
  std::cerr << "iso certificate: " << j["parts_passed"].get<std::string>() << " parts pass\n";
  return cert.verdict == Verdict::holds ? kVerified : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toric, sheaf and braid-group computations for crepant resolutions of C^3 / mu_r"};
  app.require_subcommand(1);

  Int r = 0;
  std::string weights, fixture_name, out;
  bool all = false;
  std::optional<std::size_t> index;
  auto* resolve = app.add_subcommand("resolve", "crepant resolution fan of C^3 / mu_r");
  resolve->add_option("--r", r, "group order")->required();
  resolve->add_option("--weights", weights, "weights a,b,c")->required();
  auto* all_opt = resolve->add_flag("--all", all, "emit every triangulation");
  auto* idx_opt = resolve->add_option("--index", index, "emit triangulation k (default 0)");
  auto* fix_opt = resolve->add_option("--fixture", fixture_name, "emit a built-in fixture");
  all_opt->excludes(idx_opt)->excludes(fix_opt);
  idx_opt->excludes(fix_opt);
  resolve->add_option("--out", out, "output file (default stdout)");

  FanSource src;
  bool stable = false;
  auto* surfaces = app.add_subcommand("surfaces", "classify the compact exceptional surfaces");
  auto* intersections = app.add_subcommand("intersections", "curves between exceptional surfaces");
  auto* homs = app.add_subcommand("homs", "graded Hom dimensions between the surfaces' structure sheaves");
  auto* twists = app.add_subcommand("twists", "Euler matrix, twist matrices and relation checks (relations.json)");
  auto* verify = app.add_subcommand("verify", "run the full verification pipeline");
  for (auto* cmd : {surfaces, intersections, homs, twists, verify}) {
    src.attach(cmd);
    cmd->add_option("--out", out, "output file (default stdout)");
  }
  verify->add_flag("--stable-output", stable, "omit timings for byte-stable output");

  auto* iso = app.add_subcommand("iso", "certificate that the quiver braid group is Br_4 (iso_certificate.json)");
  src.attach(iso);
  iso->add_option("--out", out, "output file (default stdout)");

  int strands = 0;
  std::string word_text;
  auto* word = app.add_subcommand("word", "decide whether a braid word is trivial");
  word->add_option("--n", strands, "number of strands")->required();
  word->add_option("--word", word_text, "word as space-separated signed generator indices")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kOperational;
  }

  try {
    if (*resolve) return cmd_resolve(r, weights, all, index, fixture_name, out);
    if (*verify) return cmd_verify(src, stable, out);
    if (*word) return cmd_word(strands, word_text);
    if (*iso) return cmd_iso(src, out);
    const auto cfg = build_config(src.load());
    if (*surfaces) write_output(dump(surfaces_json(cfg)), out);
    if (*intersections) write_output(dump(intersections_json(cfg)), out);
    if (*homs) write_output(dump(homs_json(cfg)), out);
    if (*twists) {
      const Json t = twists_json(cfg);
      write_output(dump(t), out);
      bool ok = t["antisymmetric_zero_diagonal"].get<bool>();
      for (const char* key : {"properties", "relations"})
        if (t.contains(key))
          for (const auto& [name, v] : t[key].items()) ok = ok && v.get<bool>();
      return ok ? kVerified : kRefuted;
    }
    return kVerified;
  } catch (const qbraid::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOperational;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOperational;
  }
}
