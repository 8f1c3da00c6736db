// Command-line front end: classify presentations, run entropy/dimension/doubling
// estimators, audit Lipschitz constants, fuse actions, enumerate the subtree space.
// Exit codes: 0 decided, 1 input/usage error, 2 inconclusive or partial result.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "mbx/io.hpp"
#include "mbx/kernels.hpp"

using namespace mbx;

namespace {

int g_exit = 0;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(rat_from_string(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

std::string dir_of(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

// treespace entropy epsilons must be dyadic; returns j with epsilon = 2^-j
std::optional<int> dyadic_exponent(const Rat& eps) {
  if (eps.num != 1) return std::nullopt;
  std::int64_t d = eps.den;
  int j = 0;
  while (d > 1) {
    if (d % 2) return std::nullopt;
    d /= 2;
    ++j;
  }
  return j;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations with minimal Cantor pseudogroup actions"};
  app.require_subcommand(1);

  std::string out_path, format = "json";
  std::uint64_t seed = 0;
  bool serial = false;
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "seed recorded in reports; sampling is deterministic in it");
  app.add_flag("--serial", serial, "disable the OpenMP kernels");

  // classify
  auto* cmd_classify = app.add_subcommand("classify", "tower/Lipschitz classification");
  std::string p_file, q_file;
  std::int64_t horizon = 64;
  cmd_classify->add_option("P", p_file, "presentation file")->required();
  cmd_classify->add_option("Q", q_file, "presentation file")->required();
  cmd_classify->add_option("--horizon", horizon, "levels tested (default 64; 24 for chains)");

  // entropy
  auto* cmd_entropy = app.add_subcommand("entropy", "expansion-growth slopes");
  std::string spec_file, eps_csv = "1/2,1/6,1/18";
  int ell_lo = 0, ell_hi = 10, depth = 0;
  cmd_entropy->add_option("SPEC", spec_file, "pseudogroup spec file")->required();
  cmd_entropy->add_option("--epsilon", eps_csv, "decreasing comma-separated rationals");
  cmd_entropy->add_option("--ell-lo", ell_lo, "word-length range start");
  cmd_entropy->add_option("--ell-hi", ell_hi, "word-length range end");
  cmd_entropy->add_option("--depth", depth, "working cylinder depth (0 = system minimum)");

  // fuse
  auto* cmd_fuse = app.add_subcommand("fuse", "amalgamate two actions over a gluing table");
  std::string fspec_file;
  cmd_fuse->add_option("FSPEC", fspec_file, "fusion spec file")->required();

  // treespace
  auto* cmd_tree = app.add_subcommand("treespace", "subtree-space covering counts");
  int ts_n = 2, ts_klo = 1, ts_khi = 4, ts_enum = -1;
  cmd_tree->add_option("--n", ts_n, "free group rank");
  cmd_tree->add_option("--k-lo", ts_klo, "radius range start");
  cmd_tree->add_option("--k-hi", ts_khi, "radius range end");
  cmd_tree->add_option("--enumerate", ts_enum, "also write the radius-k enumeration cache");

  // dimension
  auto* cmd_dim = app.add_subcommand("dimension", "box-counting dimension table");
  std::string space_file;
  int d_lo = 1, d_hi = 12;
  cmd_dim->add_option("SPACE", space_file, "space file (with optional metric)")->required();
  cmd_dim->add_option("--depth-lo", d_lo, "scale ladder start");
  cmd_dim->add_option("--depth-hi", d_hi, "scale ladder end");

  // audit
  auto* cmd_audit = app.add_subcommand("audit", "measured distortion vs C^alpha");
  std::string audit_file;
  int alpha = 3, audit_depth = 0;
  cmd_audit->add_option("SPEC", audit_file, "pseudogroup spec file")->required();
  cmd_audit->add_option("--alpha", alpha, "word-length budget");
  cmd_audit->add_option("--depth", audit_depth, "working cylinder depth (0 = system minimum)");

  // doubling
  auto* cmd_dbl = app.add_subcommand("doubling", "doubling-property check");
  std::string dbl_file;
  std::int64_t dbl_c = 2;
  int dbl_depth = 8, dbl_halvings = 6;
  bool dbl_treespace = false;
  int dbl_n = 2;
  cmd_dbl->add_option("SPACE", dbl_file, "space file; or use --treespace");
  cmd_dbl->add_option("--constant", dbl_c, "doubling constant C");
  cmd_dbl->add_option("--max-depth", dbl_depth, "ball centers up to this depth");
  cmd_dbl->add_option("--halvings", dbl_halvings, "radius halvings per ball");
  cmd_dbl->add_flag("--treespace", dbl_treespace, "check the subtree space instead of a file");
  cmd_dbl->add_option("--n", dbl_n, "subtree space rank (with --treespace)");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);
  set_kernels_parallel(!serial);

  try {
    if (*cmd_classify) {
      Presentation P = presentation_from_json(load_json_file(p_file));
      Presentation Q = presentation_from_json(load_json_file(q_file));
      Json rep;
      if (P.is_chain != Q.is_chain) throw UsageError("presentations over different bases");
      if (P.is_chain) {
        std::int64_t h = horizon == 64 ? 24 : horizon;
        ChainTowerVerdict v = tower_equivalent_chain(P.chain, Q.chain, h);
        rep = classification_report_chain(v, h, seed);
        if (v.kind == TowerVerdict::Kind::Inconclusive ||
            (v.kind == TowerVerdict::Kind::Equivalent &&
             v.disp.kind == DisplacementResult::Kind::Inconclusive))
          g_exit = 2;
      } else {
        LipschitzVerdict v = bounded_tower_equivalent(P.degrees, Q.degrees, horizon);
        rep = classification_report(v, horizon, seed);
        if (v.kind == LipschitzVerdict::Kind::Inconclusive) g_exit = 2;
      }
      emit(dump_json(rep), out_path);
    } else if (*cmd_entropy) {
      std::vector<Rat> eps = parse_rat_list(eps_csv);
      if (eps.empty()) throw UsageError("empty epsilon list");
      LoadedSystem ls = system_from_json(load_json_file(spec_file), dir_of(spec_file));
      EntropyProfile profile;
      std::string mode;
      if (ls.kind == "treespace") {
        // production route: exact pattern counts for the full space
        std::vector<int> js;
        for (const auto& e : eps) {
          auto j = dyadic_exponent(e);
          if (!j) throw UsageError("treespace entropy needs dyadic epsilons (1/2^j)");
          js.push_back(*j);
        }
        profile = treespace_entropy_profile(ls.doc.at("n").get<int>(), js, ell_lo, ell_hi);
        mode = "pattern-count";
      } else {
        int d = depth > 0 ? depth : ls.sys->min_depth();
        profile = entropy_profile(*ls.sys, eps, ell_lo, ell_hi, d, true);
        mode = "exact";
        for (const auto& s : profile.series)
          for (const auto& e : s.entries)
            if (!e.exact) mode = "greedy";
        depth = d;
      }
      if (format == "csv")
        emit(entropy_csv(profile, mode), out_path);
      else
        emit(dump_json(entropy_report(profile, depth, mode, seed)), out_path);
      if (mode == "greedy") g_exit = 2;
    } else if (*cmd_fuse) {
      Json fj = load_json_file(fspec_file);
      fj["kind"] = "fusion";
      fj["schema"] = "mbx.pseudogroup/1";
      LoadedSystem ls = system_from_json(fj, dir_of(fspec_file));
      emit(dump_json(ls.doc), out_path);
    } else if (*cmd_tree) {
      CoveringReport rep = covering_counts(ts_n, ts_klo, ts_khi);
      if (ts_enum >= 0) {
        const char* cache = std::getenv("MBX_CACHE_DIR");
        std::string dir = cache ? cache : ".";
        Json cj;
        cj["schema"] = "mbx.cache.treespace/1";
        cj["n"] = ts_n;
        cj["k"] = ts_enum;
        Json pats = Json::array();
        for (const auto& p : enumerate_points(ts_n, ts_enum)) {
          Json verts = Json::array();
          for (auto v : p.verts) verts.push_back(v);
          pats.push_back(verts);
        }
        cj["patterns"] = pats;
        write_text_file(dir + "/tree_n" + std::to_string(ts_n) + "_k" + std::to_string(ts_enum) +
                            ".json",
                        dump_json(cj));
      }
      if (format == "csv")
        emit(covering_csv(rep), out_path);
      else
        emit(dump_json(covering_report(rep, seed)), out_path);
    } else if (*cmd_dim) {
      Json j = load_json_file(space_file);
      LevelSpacePtr sp = space_from_json(j.contains("space") ? j.at("space") : j);
      WeightedMetric m = j.contains("metric") ? metric_from_json(j.at("metric"))
                                              : WeightedMetric::power(3);
      DimensionReport rep = box_dimension_estimate(*sp, m, d_lo, d_hi);
      if (format == "csv")
        emit(dimension_csv(rep), out_path);
      else
        emit(dump_json(dimension_report(rep, seed)), out_path);
      if (!rep.slope_defined) g_exit = 2;
    } else if (*cmd_audit) {
      LoadedSystem ls = system_from_json(load_json_file(audit_file), dir_of(audit_file));
      int d = audit_depth > 0 ? audit_depth : ls.sys->min_depth();
      AuditReport rep = lipschitz_audit(*ls.sys, alpha, d);
      if (format == "csv")
        emit(audit_csv(rep, *ls.sys), out_path);
      else
        emit(dump_json(audit_report(rep, *ls.sys, seed)), out_path);
    } else if (*cmd_dbl) {
      DoublingReport rep;
      if (dbl_treespace) {
        TreeCounter rc(dbl_n);
        rep = doubling_check(rc, tree_metric(), dbl_c, std::min(dbl_depth, 2), dbl_halvings);
        rep.max_depth = dbl_depth;
      } else {
        if (dbl_file.empty()) throw UsageError("give a space file or --treespace");
        Json j = load_json_file(dbl_file);
        LevelSpacePtr sp = space_from_json(j.contains("space") ? j.at("space") : j);
        WeightedMetric m = j.contains("metric") ? metric_from_json(j.at("metric"))
                                                : WeightedMetric::power(3);
        if (!sp->coherent && !m.separated_tail(dbl_depth))
          throw UnsupportedMetric("doubling needs cylinder balls (separated-tail or coherent)");
        LevelSpaceCounter rc(*sp);
        rep = doubling_check(rc, m, dbl_c, dbl_depth, dbl_halvings);
      }
      emit(dump_json(doubling_report(rep, seed)), out_path);
    }
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
