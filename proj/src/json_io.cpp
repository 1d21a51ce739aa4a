#include "abelmoments/json_io.hpp"

namespace abelmoments::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("JSON object is missing \"") + key + "\"");
  return j.at(key);
}

long require_prime(const json& j) {
  const json& p = require(j, "p");
  if (!p.is_number_integer() || p.get<long>() < 2) throw DomainError("\"p\" must be an integer >= 2");
  return p.get<long>();
}

std::vector<long> require_primes(const json& j) {
  const json& primes = require(j, "primes");
  if (!primes.is_array()) throw DomainError("\"primes\" must be an array");
  std::vector<long> out;
  for (const json& p : primes) {
    if (!p.is_number_integer()) throw DomainError("primes must be integers");
    out.push_back(p.get<long>());
  }
  validate_primes(out);
  return out;
}

Rational entry_value(const json& entry) {
  if (entry.contains("value")) return rational_from_json(entry.at("value"));
  if (entry.contains("mass")) return rational_from_json(entry.at("mass"));
  throw DomainError("entry is missing \"value\"");
}

PartitionTuple tuple_from_json(const json& j, std::size_t expected) {
  if (!j.is_array() || j.size() != expected) {
    throw DomainError("\"partitions\" must be an array of " + std::to_string(expected) + " partitions");
  }
  PartitionTuple out;
  for (const json& p : j) out.push_back(partition_from_json(p));
  return out;
}

json tuple_to_json(const PartitionTuple& tuple) {
  json out = json::array();
  for (const Partition& p : tuple) out.push_back(to_json(p));
  return out;
}

json partition_map_entries(const PartitionMap& map) {
  json entries = json::array();
  for (const auto& [lambda, value] : map) entries.push_back({{"partition", to_json(lambda)}, {"value", to_json(value)}});
  return entries;
}

PartitionMap partition_map_from_entries(const json& j) {
  if (!j.is_array()) throw DomainError("\"entries\" must be an array");
  PartitionMap out;
  for (const json& entry : j) {
    const Partition lambda = partition_from_json(require(entry, "partition"));
    if (!out.emplace(lambda, entry_value(entry)).second) throw DomainError("duplicate entry for " + lambda.str());
  }
  return out;
}

}  // namespace

json to_json(const Partition& p) { return json(p.parts()); }

Partition partition_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("partition must be a JSON array of integers");
  std::vector<int> parts;
  for (const json& v : j) {
    if (!v.is_number_integer()) throw DomainError("partition parts must be integers");
    parts.push_back(v.get<int>());
  }
  return Partition(parts);
}

Partition parse_partition(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    throw DomainError("partition must be a JSON array such as [2,1], got '" + text + "'");
  }
  return partition_from_json(j);
}

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw DomainError("rationals must be strings such as \"3/4\" or integers");
}

json to_json(const MomentTable& table) {
  json out = {{"p", table.p}, {"entries", partition_map_entries(table.entries)}};
  return out;
}

MomentTable moment_table_from_json(const json& j) {
  MomentTable table;
  table.p = require_prime(j);
  if (j.contains("entries")) table.entries = partition_map_from_entries(j.at("entries"));
  if (j.contains("provider")) {
    const json& provider = j.at("provider");
    const std::string kind = require(provider, "kind").get<std::string>();
    if (kind != "constant") throw DomainError("unknown moment provider kind '" + kind + "'");
    table.provider = MomentTable::constant(table.p, rational_from_json(require(provider, "value"))).provider;
  }
  for (const auto& [mu, value] : table.entries) {
    if (value.sign() < 0) throw DomainError("negative moment at " + mu.str());
  }
  return table;
}

json to_json(const Distribution& dist) { return {{"p", dist.p}, {"entries", partition_map_entries(dist.masses)}}; }

Distribution distribution_from_json(const json& j) {
  Distribution dist;
  dist.p = require_prime(j);
  dist.masses = partition_map_from_entries(require(j, "entries"));
  dist.validate();
  return dist;
}

json to_json(const MultiMomentTable& table) {
  json out = {{"primes", table.primes}};
  if (table.factored()) {
    json factors = json::array();
    for (const MomentTable& f : table.factors) factors.push_back(to_json(f));
    out["factors"] = factors;
    return out;
  }
  json entries = json::array();
  for (const auto& [mus, value] : table.entries) {
    entries.push_back({{"partitions", tuple_to_json(mus)}, {"value", to_json(value)}});
  }
  out["entries"] = entries;
  return out;
}

MultiMomentTable multi_moment_table_from_json(const json& j) {
  MultiMomentTable table;
  table.primes = require_primes(j);
  if (j.contains("factors")) {
    for (const json& f : j.at("factors")) table.factors.push_back(moment_table_from_json(f));
    if (table.factors.size() != table.primes.size()) throw DomainError("need one factor table per prime");
    return table;
  }
  for (const json& entry : require(j, "entries")) {
    table.entries[tuple_from_json(require(entry, "partitions"), table.primes.size())] += entry_value(entry);
  }
  return table;
}

json to_json(const MultiDistribution& dist) {
  json entries = json::array();
  for (const auto& [nus, mass] : dist.masses) {
    entries.push_back({{"partitions", tuple_to_json(nus)}, {"value", to_json(mass)}});
  }
  return {{"primes", dist.primes}, {"entries", entries}};
}

MultiDistribution multi_distribution_from_json(const json& j) {
  MultiDistribution dist;
  dist.primes = require_primes(j);
  for (const json& entry : require(j, "entries")) {
    dist.masses[tuple_from_json(require(entry, "partitions"), dist.primes.size())] += entry_value(entry);
  }
  return dist;
}

json to_json(const Diagnostics& diag) {
  json partial = json::array();
  for (const Rational& r : diag.partial_sums) partial.push_back(to_json(r));
  json out = {{"mode", to_string(diag.mode)},     {"cap", diag.cap},
              {"terms", diag.terms},              {"partial_sums", partial},
              {"last_block", to_json(diag.last_block)}, {"converged", diag.converged},
              {"heuristic", diag.heuristic}};
  if (!diag.note.empty()) out["note"] = diag.note;
  return out;
}

json to_json(const InversionResult& result) {
  return {{"value", to_json(result.value)}, {"diagnostics", to_json(result.diagnostics)}};
}

json to_json(const sim::SimConfig& config) {
  return {{"p", config.p},
          {"d", config.d},
          {"n", config.n},
          {"sample_count", config.sample_count},
          {"seed", config.seed},
          {"shard_count", config.shard_count},
          {"threads", config.threads},
          {"moment_cap", config.moment_cap}};
}

sim::SimConfig sim_config_from_json(const json& j, sim::SimConfig base) {
  if (!j.is_object()) throw DomainError("simulation config must be a JSON object");
  try {
    if (j.contains("p")) base.p = j.at("p").get<long>();
    if (j.contains("d")) base.d = j.at("d").get<int>();
    if (j.contains("n")) base.n = j.at("n").get<int>();
    if (j.contains("sample_count")) base.sample_count = j.at("sample_count").get<std::uint64_t>();
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("shard_count")) base.shard_count = j.at("shard_count").get<int>();
    if (j.contains("threads")) base.threads = j.at("threads").get<int>();
    if (j.contains("moment_cap")) base.moment_cap = j.at("moment_cap").get<int>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad simulation config: ") + e.what());
  }
  return base;
}

json to_json(const sim::ClosedLoopReport& report) {
  const sim::SimConfig& c = report.config;
  json rows = json::array();
  for (const sim::ReportRow& row : report.rows) {
    rows.push_back({{"nu", to_json(row.nu)},
                    {"empirical", to_json(row.empirical)},
                    {"inverted", to_json(row.inverted)},
                    {"gap", to_json(row.gap)},
                    {"gap_decimal", row.gap.decimal(12)},
                    {"flagged", row.flagged},
                    {"diagnostics", to_json(row.diagnostics)}});
  }
  json counts = json::array();
  for (const auto& [type, count] : report.empirical.counts) {
    counts.push_back({{"partition", to_json(type)}, {"count", count}});
  }
  return {{"config",
           {{"p", c.p}, {"d", c.d}, {"n", c.n}, {"sample_count", c.sample_count}, {"seed", c.seed},
            {"moment_cap", c.effective_moment_cap()}}},
          {"probe_depth", report.probe_depth},
          {"gap_tolerance", to_json(report.gap_tolerance)},
          {"counts", counts},
          {"distribution", to_json(report.empirical.distribution)},
          {"moments", to_json(report.empirical.moments)},
          {"rows", rows},
          {"max_gap", to_json(report.max_gap)},
          {"max_gap_decimal", report.max_gap.decimal(12)}};
}

}  // namespace abelmoments::io
