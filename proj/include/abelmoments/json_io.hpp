#pragma once

#include <json.hpp>

#include "abelmoments/inversion.hpp"
#include "abelmoments/partition.hpp"
#include "abelmoments/rational.hpp"
#include "abelmoments/simulator.hpp"

// JSON schemas shared by the CLI and the Python bindings.
//
//   Partition          [5,2,2,1]   ([] for the empty partition)
//   Rational           "num/den"   (bare integers accepted on input)
//   MomentTable        {"p": 2, "entries": [{"partition": [1,1], "value": "3/1"}, ...]}
//                      optional "provider": {"kind": "constant", "value": "1"}
//   Distribution       {"p": 2, "entries": [{"partition": [1], "value": "1/2"}, ...]}
//   MultiMomentTable   {"primes": [2,3], "entries": [{"partitions": [[1],[1]], "value": "1/1"}, ...]}
//                      or {"primes": [2,3], "factors": [<MomentTable>, <MomentTable>]}
//   MultiDistribution  {"primes": [2,3], "entries": [{"partitions": [[1],[1]], "value": "1/1"}, ...]}
//   Diagnostics        {"mode", "cap", "terms", "partial_sums", "last_block", "converged", "heuristic"}

namespace abelmoments::io {

using nlohmann::json;

json to_json(const Partition& p);
Partition partition_from_json(const json& j);
/// Parses a JSON array given as text, e.g. "[2,1]".
Partition parse_partition(const std::string& text);

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const MomentTable& table);
MomentTable moment_table_from_json(const json& j);

json to_json(const Distribution& dist);
Distribution distribution_from_json(const json& j);

json to_json(const MultiMomentTable& table);
MultiMomentTable multi_moment_table_from_json(const json& j);

json to_json(const MultiDistribution& dist);
MultiDistribution multi_distribution_from_json(const json& j);

json to_json(const Diagnostics& diag);
json to_json(const InversionResult& result);

json to_json(const sim::SimConfig& config);
/// Missing keys keep their defaults.
sim::SimConfig sim_config_from_json(const json& j, sim::SimConfig base = {});
/// Shard and thread counts are left out: they do not affect the result.
json to_json(const sim::ClosedLoopReport& report);

}  // namespace abelmoments::io
