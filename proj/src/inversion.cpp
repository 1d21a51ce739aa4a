#include "abelmoments/inversion.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "abelmoments/hall_littlewood.hpp"

namespace abelmoments {

namespace {

int first_column(const Partition& lambda) { return static_cast<int>(lambda.length()); }

// One prime's slice of the summation domain: blocks of μ with μ'_1 = ν'_1 + offset.
struct PrimeDomain {
  Partition nu;
  Rational t;
  std::optional<int> level;  // keep only μ with μ_1 ≤ level
  int limit = 0;             // largest offset allowed (exact and cap modes)
  std::vector<std::vector<std::pair<Partition, Rational>>> blocks;

  const std::vector<std::pair<Partition, Rational>>& block(int offset) {
    while (static_cast<int>(blocks.size()) <= offset) {
      const int column = first_column(nu) + static_cast<int>(blocks.size());
      std::vector<std::pair<Partition, Rational>> terms;
      for (Partition& mu : conjugate_interlacing_block(nu, column)) {
        if (level && mu[0] > *level) continue;
        Rational c = hl::inversion_coefficient(nu, mu, t);
        if (!c.is_zero()) terms.emplace_back(std::move(mu), std::move(c));
      }
      blocks.push_back(std::move(terms));
    }
    return blocks[static_cast<std::size_t>(offset)];
  }
};

using MomentLookup = std::function<Rational(const PartitionTuple&)>;

// Sum of all terms whose largest per-prime offset is exactly `level`.
Rational level_sum(std::vector<PrimeDomain>& domains, int level, const MomentLookup& moment, std::size_t& terms) {
  Rational total(0);
  PartitionTuple mus(domains.size());
  std::function<void(std::size_t, bool, const Rational&)> rec = [&](std::size_t i, bool hit, const Rational& coeff) {
    if (i == domains.size()) {
      if (!hit) return;
      ++terms;
      const Rational m = moment(mus);
      if (!m.is_zero()) total += coeff * m;
      return;
    }
    const int top = std::min(level, domains[i].limit);
    for (int offset = 0; offset <= top; ++offset) {
      for (const auto& [mu, c] : domains[i].block(offset)) {
        mus[i] = mu;
        rec(i + 1, hit || offset == level, coeff * c);
      }
    }
  };
  rec(0, false, Rational(1));
  return total;
}

InversionResult run_inversion(std::vector<PrimeDomain> domains, const MomentLookup& moment,
                              const TruncationPolicy& policy) {
  InversionResult result;
  Diagnostics& diag = result.diagnostics;
  diag.mode = policy.mode;

  auto finish_cap = [&]() {
    int cap = 0;
    for (const auto& d : domains) cap = std::max(cap, first_column(d.nu) + d.limit);
    diag.cap = cap;
  };

  if (policy.mode != TruncationPolicy::Mode::adaptive) {
    int max_limit = 0;
    for (const auto& d : domains) max_limit = std::max(max_limit, d.limit);
    for (int level = 0; level <= max_limit; ++level) {
      diag.last_block = level_sum(domains, level, moment, diag.terms);
      result.value += diag.last_block;
      if (policy.report_partial_sums) diag.partial_sums.push_back(result.value);
    }
    finish_cap();
    return result;
  }

  if (policy.window < 1) throw DomainError("adaptive truncation needs a window of at least one block");
  if (policy.tolerance.sign() <= 0) throw DomainError("adaptive truncation needs a positive tolerance");
  diag.heuristic = true;
  diag.note = "adaptive stopping rule: no tail bound is implied; absolute convergence is assumed";
  int quiet_blocks = 0;
  for (int level = 0;; ++level) {
    for (auto& d : domains) d.limit = level;
    finish_cap();
    if (diag.cap > policy.hard_cap) {
      diag.converged = false;
      for (auto& d : domains) d.limit = level - 1;
      finish_cap();
      throw NonConvergence("adaptive truncation did not settle below tolerance " + policy.tolerance.str() +
                               " within first-column cap " + std::to_string(policy.hard_cap),
                           diag);
    }
    diag.last_block = level_sum(domains, level, moment, diag.terms);
    result.value += diag.last_block;
    if (policy.report_partial_sums) diag.partial_sums.push_back(result.value);
    quiet_blocks = diag.last_block.abs() < policy.tolerance ? quiet_blocks + 1 : 0;
    if (quiet_blocks >= policy.window) break;
  }
  diag.converged = true;
  return result;
}

Rational multi_lookup_factored(const std::vector<MomentTable>& factors, const PartitionTuple& mus) {
  Rational value(1);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    value *= factors[i].at(mus[i]);
    if (value.is_zero()) break;
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------

Rational Distribution::total_mass() const {
  Rational total(0);
  for (const auto& [nu, mass] : masses) total += mass;
  return total;
}

void Distribution::validate() const {
  if (p < 2) throw DomainError("distribution prime must be at least 2");
  for (const auto& [nu, mass] : masses) {
    if (mass.sign() < 0 || mass > Rational(1)) {
      throw DomainError("mass " + mass.str() + " at " + nu.str() + " is outside [0, 1]");
    }
  }
}

Rational MomentTable::at(const Partition& mu) const {
  if (auto it = entries.find(mu); it != entries.end()) return it->second;
  if (!provider) return Rational(0);
  if (auto value = provider(mu)) return *value;
  throw DomainError("moment table has no value for mu = " + mu.str());
}

int MomentTable::max_first_column() const {
  int best = 0;
  for (const auto& [mu, value] : entries) {
    if (!value.is_zero()) best = std::max(best, first_column(mu));
  }
  return best;
}

MomentTable MomentTable::constant(long p, const Rational& value) {
  MomentTable table;
  table.p = p;
  table.provider = [value](const Partition&) -> std::optional<Rational> { return value; };
  return table;
}

TruncationPolicy TruncationPolicy::capped(int cap) {
  TruncationPolicy policy;
  policy.mode = Mode::cap;
  policy.first_column_cap = cap;
  return policy;
}

TruncationPolicy TruncationPolicy::adaptive_until(const Rational& tolerance, int window, int hard_cap) {
  TruncationPolicy policy;
  policy.mode = Mode::adaptive;
  policy.tolerance = tolerance;
  policy.window = window;
  policy.hard_cap = hard_cap;
  return policy;
}

TruncationPolicy TruncationPolicy::default_for(const MomentTable& table, int cap_if_infinite) {
  return table.finite() ? exact() : capped(cap_if_infinite);
}

std::string to_string(TruncationPolicy::Mode mode) {
  switch (mode) {
    case TruncationPolicy::Mode::exact_finite_support:
      return "exact-finite-support";
    case TruncationPolicy::Mode::cap:
      return "cap";
    case TruncationPolicy::Mode::adaptive:
      return "adaptive";
  }
  return "unknown";
}

std::string to_string(const PartitionTuple& tuple) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < tuple.size(); ++i) os << (i ? "," : "") << tuple[i];
  os << ')';
  return os.str();
}

MomentTable moments_from_distribution(const Distribution& dist, const std::vector<Partition>& mus) {
  dist.validate();
  MomentTable table;
  table.p = dist.p;
  for (const Partition& mu : mus) {
    Rational total(0);
    for (const auto& [nu, mass] : dist.masses) {
      if (mass.is_zero() || !contains(mu, nu)) continue;
      total += mass * Rational(hl::surjection_count(nu, mu, dist.p));
    }
    if (!total.is_zero()) table.entries.emplace(mu, total);
  }
  return table;
}

MomentTable moments_from_distribution(const Distribution& dist) {
  std::set<Partition, GradedOrder> mus;
  for (const auto& [nu, mass] : dist.masses) {
    if (mass.is_zero()) continue;
    for (Partition& mu : sub_partitions(nu)) mus.insert(std::move(mu));
  }
  return moments_from_distribution(dist, std::vector<Partition>(mus.begin(), mus.end()));
}

namespace {

PrimeDomain make_domain(const Partition& nu, long p, const TruncationPolicy& policy, int exact_max_column,
                        bool finite) {
  PrimeDomain domain;
  domain.nu = nu;
  domain.t = hl::HLParams::from_residue_cardinality(p).t();
  const int base = first_column(nu);
  switch (policy.mode) {
    case TruncationPolicy::Mode::exact_finite_support:
      if (!finite) {
        throw DomainError("exact-finite-support mode needs a finite moment table; choose cap or adaptive mode");
      }
      domain.limit = std::max(base, exact_max_column) - base;
      break;
    case TruncationPolicy::Mode::cap:
      if (policy.first_column_cap < base) {
        throw DomainError("first-column cap " + std::to_string(policy.first_column_cap) + " is below nu'_1 = " +
                          std::to_string(base) + " for nu = " + nu.str());
      }
      domain.limit = policy.first_column_cap - base;
      break;
    case TruncationPolicy::Mode::adaptive:
      domain.limit = 0;
      break;
  }
  return domain;
}

}  // namespace

InversionResult invert(const MomentTable& moments, const Partition& nu, const TruncationPolicy& policy) {
  std::vector<PrimeDomain> domains{make_domain(nu, moments.p, policy, moments.max_first_column(), moments.finite())};
  return run_inversion(std::move(domains), [&](const PartitionTuple& mus) { return moments.at(mus[0]); }, policy);
}

InversionResult invert_fixed_level(const MomentTable& moments, const Partition& nu, int level,
                                   const TruncationPolicy& policy) {
  if (level < 1) throw DomainError("torsion level must be positive");
  if (nu[0] > level) {
    throw DomainError("nu = " + nu.str() + " is not p^" + std::to_string(level) + "-torsion (nu_1 > d)");
  }
  PrimeDomain domain = make_domain(nu, moments.p, policy, moments.max_first_column(), moments.finite());
  domain.level = level;
  std::vector<PrimeDomain> domains{std::move(domain)};
  return run_inversion(std::move(domains), [&](const PartitionTuple& mus) { return moments.at(mus[0]); }, policy);
}

// --- several primes -------------------------------------------------------

void validate_primes(const std::vector<long>& primes) {
  if (primes.empty()) throw DomainError("at least one prime is required");
  std::set<long> seen;
  for (long p : primes) {
    if (p < 2) throw DomainError("prime " + std::to_string(p) + " is below 2");
    if (!seen.insert(p).second) throw DomainError("duplicate prime " + std::to_string(p));
  }
}

Rational MultiMomentTable::at(const PartitionTuple& mus) const {
  if (mus.size() != primes.size()) throw DomainError("partition tuple length does not match the prime list");
  if (factored()) return multi_lookup_factored(factors, mus);
  auto it = entries.find(mus);
  return it == entries.end() ? Rational(0) : it->second;
}

bool MultiMomentTable::finite() const {
  return std::all_of(factors.begin(), factors.end(), [](const MomentTable& f) { return f.finite(); });
}

std::vector<int> MultiMomentTable::max_first_columns() const {
  std::vector<int> out(primes.size(), 0);
  if (factored()) {
    for (std::size_t i = 0; i < factors.size(); ++i) out[i] = factors[i].max_first_column();
    return out;
  }
  for (const auto& [mus, value] : entries) {
    if (value.is_zero()) continue;
    for (std::size_t i = 0; i < mus.size() && i < out.size(); ++i) out[i] = std::max(out[i], first_column(mus[i]));
  }
  return out;
}

MultiMomentTable multi_moments_from_distribution(const MultiDistribution& dist) {
  validate_primes(dist.primes);
  const std::size_t k = dist.primes.size();
  MultiMomentTable table;
  table.primes = dist.primes;
  for (const auto& [nus, mass] : dist.masses) {
    if (nus.size() != k) throw DomainError("partition tuple length does not match the prime list");
    if (mass.sign() < 0) throw DomainError("negative mass at " + to_string(nus));
    if (mass.is_zero()) continue;
    // Surjections onto a product of coprime-order parts factor prime by prime.
    std::vector<std::vector<std::pair<Partition, BigInt>>> per_prime(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (Partition& mu : sub_partitions(nus[i])) {
        BigInt count = hl::surjection_count(nus[i], mu, dist.primes[i]);
        if (count != 0) per_prime[i].emplace_back(std::move(mu), std::move(count));
      }
    }
    PartitionTuple mus(k);
    std::function<void(std::size_t, const BigInt&)> rec = [&](std::size_t i, const BigInt& count) {
      if (i == k) {
        table.entries[mus] += mass * Rational(count);
        return;
      }
      for (const auto& [mu, c] : per_prime[i]) {
        mus[i] = mu;
        rec(i + 1, BigInt(count * c));
      }
    };
    rec(0, BigInt(1));
  }
  return table;
}

InversionResult invert_multi(const MultiMomentTable& moments, const PartitionTuple& nus,
                             const TruncationPolicy& policy) {
  validate_primes(moments.primes);
  if (moments.factored() && moments.factors.size() != moments.primes.size()) {
    throw DomainError("factored moment table needs one factor per prime");
  }
  for (std::size_t i = 0; i < moments.factors.size(); ++i) {
    if (moments.factors[i].p != moments.primes[i]) throw DomainError("factor prime does not match the prime list");
  }
  if (nus.size() != moments.primes.size()) throw DomainError("nu tuple length does not match the prime list");
  const std::vector<int> columns = moments.max_first_columns();
  std::vector<PrimeDomain> domains;
  for (std::size_t i = 0; i < nus.size(); ++i) {
    domains.push_back(make_domain(nus[i], moments.primes[i], policy, columns[i], moments.finite()));
  }
  return run_inversion(std::move(domains), [&](const PartitionTuple& mus) { return moments.at(mus); }, policy);
}

}  // namespace abelmoments
