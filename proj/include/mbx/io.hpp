#pragma once

#include <json.hpp>

#include "mbx/dimension.hpp"
#include "mbx/entropy.hpp"
#include "mbx/fusion.hpp"
#include "mbx/lattice.hpp"
#include "mbx/solenoid.hpp"
#include "mbx/treespace.hpp"

namespace mbx {

using Json = nlohmann::json;

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);

// ---- object schemas -------------------------------------------------------------------

Json space_to_json(const LevelSpace& sp);
LevelSpacePtr space_from_json(const Json& j);

Json metric_to_json(const WeightedMetric& m);
WeightedMetric metric_from_json(const Json& j);

Json tables_to_json(const Pseudogroup& g);
Pseudogroup tables_from_json(const Json& j);

// any pseudogroup spec: kinds tables | odometer | sturmian | treespace | fusion
struct LoadedSystem {
  ActionSystemPtr sys;
  std::string kind;
  Json doc; // normalized document (pieces inlined)
};
LoadedSystem system_from_json(const Json& j, const std::string& base_dir = "");

// presentation files: 1-D degree sequences over S1 or Z^n chains over Tn
struct Presentation {
  bool is_chain = false;
  DegreeSeq degrees;
  SubgroupChainZn chain;
};
Presentation presentation_from_json(const Json& j);
Json presentation_to_json_1d(const DegreeSeq& s);

// ---- reports ---------------------------------------------------------------------------

Json classification_report(const LipschitzVerdict& v, std::int64_t horizon,
                           std::uint64_t seed);
Json classification_report_chain(const ChainTowerVerdict& v, std::int64_t horizon,
                                 std::uint64_t seed);
Json entropy_report(const EntropyProfile& p, int depth, const std::string& mode,
                    std::uint64_t seed);
std::string entropy_csv(const EntropyProfile& p, const std::string& mode);
Json dimension_report(const DimensionReport& r, std::uint64_t seed);
std::string dimension_csv(const DimensionReport& r);
Json doubling_report(const DoublingReport& r, std::uint64_t seed);
Json audit_report(const AuditReport& r, const ActionSystem& sys, std::uint64_t seed);
std::string audit_csv(const AuditReport& r, const ActionSystem& sys);
Json covering_report(const CoveringReport& r, std::uint64_t seed);
std::string covering_csv(const CoveringReport& r);
std::string orbit_csv(const ActionSystem& sys, const OrbitResult& orbit, int depth);

std::string dump_json(const Json& j); // deterministic, sorted keys, trailing newline

} // namespace mbx
