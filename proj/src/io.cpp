#include "mbx/io.hpp"

#include <fstream>

#include "mbx/odometer.hpp"
#include "mbx/sturmian.hpp"

namespace mbx {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(s));
  return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string rat_to_string(const Rat& r) { return r.str(); }

// ---- spaces -----------------------------------------------------------------------------

Json space_to_json(const LevelSpace& sp) {
  Json j;
  j["schema"] = "mbx.space/1";
  if (sp.levels.period.empty()) {
    j["levels"] = sp.levels.prefix;
  } else {
    j["levels"] = Json{{"rule", "periodic"},
                       {"prefix", sp.levels.prefix},
                       {"period", sp.levels.period}};
  }
  j["coherent"] = sp.coherent;
  if (!sp.full_product()) {
    j["admissible_depth"] = sp.admissible_depth;
    j["admissible"] = sp.admissible;
  }
  return j;
}

LevelSpacePtr space_from_json(const Json& j) {
  std::vector<std::uint32_t> prefix, period;
  bool coherent = j.value("coherent", true);
  const Json& lv = j.at("levels");
  if (lv.is_array()) {
    prefix = lv.get<std::vector<std::uint32_t>>();
  } else {
    if (lv.value("rule", "") != "periodic") throw UsageError("unknown level rule");
    prefix = lv.value("prefix", std::vector<std::uint32_t>{});
    period = lv.at("period").get<std::vector<std::uint32_t>>();
  }
  if (j.contains("admissible")) {
    auto cells = j.at("admissible").get<std::vector<Digits>>();
    return make_subshift_space(prefix, std::move(cells), j.at("admissible_depth").get<int>(),
                               coherent);
  }
  return make_product_space(std::move(prefix), coherent, std::move(period));
}

// ---- metrics ----------------------------------------------------------------------------

Json metric_to_json(const WeightedMetric& m) {
  Json j;
  if (m.explicit_weights.empty()) {
    j["rule"] = "power";
    j["base"] = m.power_base;
    return j;
  }
  j["rule"] = "explicit";
  std::vector<std::string> w;
  for (const auto& a : m.explicit_weights) w.push_back(a.str());
  j["weights"] = w;
  j["tail"] = m.has_tail ? Json{{"rule", "power"}, {"base", m.power_base}} : Json();
  return j;
}

WeightedMetric metric_from_json(const Json& j) {
  std::string rule = j.value("rule", "power");
  if (rule == "power") return WeightedMetric::power(j.value("base", 3));
  if (rule == "explicit") {
    std::vector<Rat> w;
    for (const auto& s : j.at("weights")) w.push_back(rat_from_string(s.get<std::string>()));
    bool tail = j.contains("tail") && !j.at("tail").is_null();
    std::int64_t base = tail ? j.at("tail").value("base", 3) : 3;
    return WeightedMetric::explicit_list(std::move(w), tail, base);
  }
  throw UsageError("unknown metric rule '" + rule + "'");
}

// ---- table pseudogroups -----------------------------------------------------------------

Json tables_to_json(const Pseudogroup& g) {
  Json j;
  j["schema"] = "mbx.pseudogroup/1";
  j["kind"] = "tables";
  j["space"] = space_to_json(*g.space);
  j["metric"] = metric_to_json(g.metric);
  j["group_action"] = g.group_action;
  if (!g.name.empty()) j["name"] = g.name;
  Json gens = Json::array();
  for (const auto& f : g.gens) {
    Json rules = Json::array();
    for (const auto& [in, out] : f.rules) rules.push_back(Json::array({in, out}));
    gens.push_back(Json{{"label", f.label},
                        {"table_depth", f.depth},
                        {"lipschitz", f.lipschitz.str()},
                        {"rules", rules}});
  }
  j["generators"] = gens;
  return j;
}

Pseudogroup tables_from_json(const Json& j) {
  Pseudogroup g;
  g.space = space_from_json(j.at("space"));
  g.metric = metric_from_json(j.at("metric"));
  g.group_action = j.value("group_action", false);
  g.name = j.value("name", "");
  for (const auto& gj : j.at("generators")) {
    PartialMap f;
    f.label = gj.value("label", "");
    f.depth = gj.at("table_depth").get<int>();
    f.lipschitz = rat_from_string(gj.at("lipschitz").get<std::string>());
    for (const auto& r : gj.at("rules"))
      f.rules.emplace_back(r.at(0).get<Digits>(), r.at(1).get<Digits>());
    std::sort(f.rules.begin(), f.rules.end());
    g.gens.push_back(std::move(f));
  }
  return g;
}

// ---- generic system loader --------------------------------------------------------------

namespace {

DegreeSeq degrees_from_json(const Json& j) {
  std::vector<std::int64_t> prefix = j.value("prefix", std::vector<std::int64_t>{});
  if (!j.contains("rule") || j.at("rule").is_null()) return DegreeSeq::explicit_prefix(prefix);
  const Json& r = j.at("rule");
  std::string kind = r.at("kind").get<std::string>();
  if (kind == "periodic")
    return DegreeSeq::periodic(prefix, r.at("period").get<std::vector<std::int64_t>>());
  if (kind == "gap2exp") {
    if (!prefix.empty()) throw UsageError("gap2exp rule defines the whole sequence");
    return DegreeSeq::gap2exp();
  }
  throw UsageError("unknown degree rule '" + kind + "'");
}

Json degrees_to_json(const DegreeSeq& s) {
  Json j;
  if (!s.prefix.empty() || s.rule == DegreeSeq::Rule::None) j["prefix"] = s.prefix;
  switch (s.rule) {
    case DegreeSeq::Rule::None:
      break;
    case DegreeSeq::Rule::Periodic:
      j["rule"] = Json{{"kind", "periodic"}, {"period", s.period}};
      break;
    case DegreeSeq::Rule::Gap2Exp:
      j["rule"] = Json{{"kind", "gap2exp"}};
      break;
  }
  return j;
}

} // namespace

LoadedSystem system_from_json(const Json& j, const std::string& base_dir) {
  LoadedSystem out;
  out.kind = j.value("kind", "tables");
  out.doc = j;
  if (out.kind == "tables") {
    out.sys = make_table_system(tables_from_json(j));
    return out;
  }
  if (out.kind == "odometer") {
    DegreeSeq s = degrees_from_json(j.at("degrees"));
    int depth = j.at("depth").get<int>();
    std::vector<std::uint32_t> degs;
    for (int l = 1; l <= depth; ++l) degs.push_back(static_cast<std::uint32_t>(s.degree(l)));
    std::vector<std::uint32_t> offsets = j.value("offsets", std::vector<std::uint32_t>{1});
    WeightedMetric m =
        j.contains("metric") ? metric_from_json(j.at("metric")) : WeightedMetric::power(3);
    out.sys = make_table_system(odometer_system(degs, depth, offsets, m));
    return out;
  }
  if (out.kind == "sturmian") {
    SturmianSpec spec;
    spec.cf_prefix = j.value("cf_prefix", std::vector<std::int64_t>{0});
    spec.cf_period = j.at("cf_period").get<std::vector<std::int64_t>>();
    spec.window = j.value("window", 2);
    spec.slack = j.value("slack", 12);
    spec.metric_base = j.value("metric_base", 3);
    out.sys = sturmian_system(spec);
    return out;
  }
  if (out.kind == "treespace") {
    int n = j.at("n").get<int>();
    int cell_depth = j.value("cell_depth", 2);
    out.sys = treespace_system(n, cell_depth);
    return out;
  }
  if (out.kind == "fusion") {
    auto load_piece = [&](const Json& pj) {
      if (pj.is_string()) {
        std::string path = pj.get<std::string>();
        if (!base_dir.empty() && !path.empty() && path[0] != '/') path = base_dir + "/" + path;
        return system_from_json(load_json_file(path), base_dir);
      }
      return system_from_json(pj, base_dir);
    };
    LoadedSystem p1 = load_piece(j.at("piece1"));
    LoadedSystem p2 = load_piece(j.at("piece2"));
    FusionSpec spec;
    spec.g1 = p1.sys;
    spec.g2 = p2.sys;
    spec.d1 = j.at("d1").get<int>();
    spec.d2 = j.at("d2").get<int>();
    spec.group_action_1 = j.value("group_action_1", false);
    spec.group_action_2 = j.value("group_action_2", false);
    spec.suffix_transport = j.value("suffix_transport", false);
    if (j.contains("pairing")) {
      for (const auto& pr : j.at("pairing"))
        spec.pairing.emplace_back(pr.at(0).get<std::uint64_t>(), pr.at(1).get<std::uint64_t>());
    } else {
      for (const auto& pr : j.at("gluing")) {
        Digits a = pr.at(0).get<Digits>(), b = pr.at(1).get<Digits>();
        spec.pairing.emplace_back(spec.g1->cell_of(a, spec.d1), spec.g2->cell_of(b, spec.d2));
      }
    }
    out.sys = fuse(spec);
    out.doc = j;
    out.doc["piece1"] = p1.doc;
    out.doc["piece2"] = p2.doc;
    return out;
  }
  throw UsageError("unknown pseudogroup kind '" + out.kind + "'");
}

// ---- presentations ----------------------------------------------------------------------

Presentation presentation_from_json(const Json& j) {
  Presentation p;
  std::string base = j.value("base", "S1");
  if (base == "S1") {
    p.degrees = degrees_from_json(j.at("degrees"));
    return p;
  }
  if (base == "Tn") {
    p.is_chain = true;
    p.chain.n = j.at("rank").get<int>();
    for (const auto& mj : j.at("chain")) {
      Lattice L;
      L.n = p.chain.n;
      auto rows = mj.get<std::vector<std::vector<std::int64_t>>>();
      if (static_cast<int>(rows.size()) != L.n) throw UsageError("chain matrix shape mismatch");
      for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != L.n) throw UsageError("chain matrix shape mismatch");
        L.a.insert(L.a.end(), r.begin(), r.end());
      }
      p.chain.chain.push_back(std::move(L));
    }
    return p;
  }
  throw UsageError("unknown base '" + base + "' (S1 or Tn)");
}

Json presentation_to_json_1d(const DegreeSeq& s) {
  Json j;
  j["schema"] = "mbx.presentation/1";
  j["base"] = "S1";
  j["degrees"] = degrees_to_json(s);
  return j;
}

// ---- reports ----------------------------------------------------------------------------

namespace {

const char* tower_kind(TowerVerdict::Kind k) {
  switch (k) {
    case TowerVerdict::Kind::Equivalent: return "yes";
    case TowerVerdict::Kind::NotEquivalent: return "no";
    default: return "inconclusive";
  }
}

Json indexing_json(const IndexingFunctions& ix) {
  return Json{{"nu_of_ell", ix.nu_of_ell}, {"ell_of_nu", ix.ell_of_nu}};
}

Json disp_json(const DisplacementResult& d) {
  Json j;
  switch (d.kind) {
    case DisplacementResult::Kind::Finite: j["kind"] = "finite"; break;
    case DisplacementResult::Kind::UnboundedTrend: j["kind"] = "unbounded_trend"; break;
    default: j["kind"] = "inconclusive"; break;
  }
  j["value_at_horizon"] = d.value;
  j["running_sup"] = d.running_sup;
  j["exact"] = d.exact;
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

} // namespace

Json classification_report(const LipschitzVerdict& v, std::int64_t horizon, std::uint64_t seed) {
  Json j;
  j["schema"] = "mbx.report.classify/1";
  j["certification"] = Json{{"horizon", horizon}, {"seed", seed}};
  j["tower"] = Json{{"verdict", tower_kind(v.tower.kind)},
                    {"exact", v.tower.exact},
                    {"reason", v.tower.reason}};
  j["indexing_functions"] = indexing_json(v.tower.indexing);
  j["displacement"] = disp_json(v.disp);
  std::string lips = v.kind == LipschitzVerdict::Kind::LipschitzEquivalent
                         ? "yes"
                         : v.kind == LipschitzVerdict::Kind::NotLipschitzEquivalent
                               ? "no"
                               : "inconclusive";
  j["verdict"] = Json{{"homeomorphic", tower_kind(v.tower.kind)},
                      {"lipschitz", lips},
                      {"weights", "3^-l"}};
  return j;
}

Json classification_report_chain(const ChainTowerVerdict& v, std::int64_t horizon,
                                 std::uint64_t seed) {
  Json j;
  j["schema"] = "mbx.report.classify/1";
  j["certification"] = Json{{"horizon", horizon}, {"seed", seed}};
  j["tower"] = Json{{"verdict", tower_kind(v.kind)}, {"exact", false}, {"reason", v.reason}};
  j["indexing_functions"] = indexing_json(v.indexing);
  j["displacement"] = disp_json(v.disp);
  std::string lips = "inconclusive";
  if (v.kind == TowerVerdict::Kind::Equivalent) {
    if (v.disp.kind == DisplacementResult::Kind::Finite) lips = "yes";
    if (v.disp.kind == DisplacementResult::Kind::UnboundedTrend) lips = "no";
  } else if (v.kind == TowerVerdict::Kind::NotEquivalent) {
    lips = "no";
  }
  j["verdict"] =
      Json{{"homeomorphic", tower_kind(v.kind)}, {"lipschitz", lips}, {"weights", "3^-l"}};
  return j;
}

Json entropy_report(const EntropyProfile& p, int depth, const std::string& mode,
                    std::uint64_t seed) {
  Json j;
  j["schema"] = "mbx.report.entropy/1";
  j["word_length_convention"] = "global";
  j["certification"] = Json{{"depth", depth}, {"seed", seed}, {"mode", mode}};
  Json series = Json::array();
  for (const auto& s : p.series) {
    Json entries = Json::array();
    for (const auto& e : s.entries)
      entries.push_back(Json{{"ell", e.ell}, {"count", e.count}, {"exact", e.exact}});
    series.push_back(Json{{"epsilon", s.epsilon.str()},
                          {"slope", s.slope},
                          {"max_residual", s.max_residual},
                          {"slope_defined", s.slope_defined},
                          {"entries", entries}});
  }
  j["series"] = series;
  j["trend"] = Json{{"slopes_nondecreasing_as_epsilon_shrinks", p.slopes_nondecreasing},
                    {"note", "finite-range trend; the epsilon->0 limit is not computed"}};
  return j;
}

std::string entropy_csv(const EntropyProfile& p, const std::string& mode) {
  std::string out = "epsilon,ell,count,mode\n";
  for (const auto& s : p.series)
    for (const auto& e : s.entries)
      out += s.epsilon.str() + "," + std::to_string(e.ell) + "," + e.count + "," + mode + "\n";
  return out;
}

Json dimension_report(const DimensionReport& r, std::uint64_t seed) {
  Json j;
  j["schema"] = "mbx.report.dimension/1";
  j["certification"] = Json{{"seed", seed}};
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"depth", row.depth}, {"scale", row.scale.str()}, {"count", row.count}});
  j["rows"] = rows;
  j["slope_defined"] = r.slope_defined;
  if (r.slope_defined) {
    j["slope"] = r.slope;
    j["residuals"] = r.residuals;
  } else {
    j["flag"] = "single scale: slope undefined";
  }
  j["note"] = "box-counting slope; an upper bound for Hausdorff dimension";
  return j;
}

std::string dimension_csv(const DimensionReport& r) {
  std::string out = "scale,count\n";
  for (const auto& row : r.rows) out += row.scale.str() + "," + std::to_string(row.count) + "\n";
  return out;
}

Json doubling_report(const DoublingReport& r, std::uint64_t seed) {
  Json j;
  j["schema"] = "mbx.report.doubling/1";
  j["certification"] =
      Json{{"max_depth", r.max_depth}, {"max_halvings", r.max_halvings}, {"seed", seed}};
  j["constant"] = r.constant;
  j["pass"] = r.pass;
  if (r.witness) {
    j["witness"] = Json{{"center", r.witness->center},
                        {"center_depth", r.witness->center_depth},
                        {"radius", r.witness->radius.str()},
                        {"halvings", r.witness->halvings},
                        {"needed", r.witness->needed},
                        {"allowed", r.witness->allowed}};
  }
  return j;
}

Json audit_report(const AuditReport& r, const ActionSystem& sys, std::uint64_t seed) {
  Json j;
  j["schema"] = "mbx.report.audit/1";
  j["certification"] = Json{{"alpha", r.alpha}, {"depth", r.depth}, {"seed", seed}};
  j["constant"] = r.constant.str();
  j["all_ok"] = r.all_ok;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"word", word_str(row.word, [&](int i) { return sys.gen_label(i); })},
                        {"length", row.word.size()},
                        {"pairs", row.pairs},
                        {"min_ratio", row.min_ratio.str()},
                        {"max_ratio", row.max_ratio.str()},
                        {"bound", row.bound.str()},
                        {"ok", row.ok}});
  j["rows"] = rows;
  return j;
}

std::string audit_csv(const AuditReport& r, const ActionSystem& sys) {
  std::string out = "word,length,pairs,min_ratio,max_ratio,bound,ok\n";
  for (const auto& row : r.rows)
    out += word_str(row.word, [&](int i) { return sys.gen_label(i); }) + "," +
           std::to_string(row.word.size()) + "," + std::to_string(row.pairs) + "," +
           row.min_ratio.str() + "," + row.max_ratio.str() + "," + row.bound.str() + "," +
           (row.ok ? "1" : "0") + "\n";
  return out;
}

Json covering_report(const CoveringReport& r, std::uint64_t seed) {
  Json j;
  j["schema"] = "mbx.report.covering/1";
  j["certification"] = Json{{"seed", seed}};
  j["n"] = r.n;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(
        Json{{"k", row.k}, {"count", row.count}, {"dimension_slope", row.dimension_slope}});
  j["rows"] = rows;
  j["slopes_strictly_increasing"] = r.slopes_strictly_increasing;
  j["note"] = "strict slope growth is finite-radius evidence, not a proof";
  return j;
}

std::string covering_csv(const CoveringReport& r) {
  std::string out = "k,count,dimension_slope\n";
  char buf[64];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%.12g", row.dimension_slope);
    out += std::to_string(row.k) + "," + row.count + "," + buf + "\n";
  }
  return out;
}

std::string orbit_csv(const ActionSystem& sys, const OrbitResult& orbit, int depth) {
  std::string out = "cell,prefix\n";
  for (auto c : orbit.cells)
    out += std::to_string(c) + "," + digits_str(sys.representative(c, depth)) + "\n";
  if (orbit.budget_hit) out += "# partial: orbit budget exhausted\n";
  return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

} // namespace mbx
