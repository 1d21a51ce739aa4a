#include "abelmoments/simulator.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "abelmoments/hall_littlewood.hpp"
#include "abelmoments/rng.hpp"

namespace abelmoments::sim {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

// Inverse of a unit modulo m.
u64 inverse_mod(u64 a, u64 m) {
  __int128 old_r = static_cast<__int128>(a), r = static_cast<__int128>(m);
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quotient = old_r / r;
    std::swap(old_r, r);
    r -= quotient * old_r;
    std::swap(old_s, s);
    s -= quotient * old_s;
  }
  if (old_r != 1) throw Error("pivot is not a unit");
  __int128 x = old_s % static_cast<__int128>(m);
  if (x < 0) x += static_cast<__int128>(m);
  return static_cast<u64>(x);
}

int valuation(u64 x, u64 p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (v < cap && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

u64 power(long p, int d) {
  u64 value = 1;
  for (int i = 0; i < d; ++i) {
    if (value > (u64{1} << 62) / static_cast<u64>(p)) throw DomainError("modulus p^d does not fit in 62 bits");
    value *= static_cast<u64>(p);
  }
  return value;
}

}  // namespace

MatrixOverLocalRing::MatrixOverLocalRing(int n, long p, int d)
    : n_(n), p_(p), d_(d), modulus_(0) {
  if (n < 1) throw DomainError("matrix dimension must be positive");
  if (p < 2) throw DomainError("p must be at least 2");
  if (d < 1) throw DomainError("d must be positive");
  modulus_ = power(p, d);
  entries_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

void MatrixOverLocalRing::set(int row, int col, std::int64_t value) {
  const auto m = static_cast<std::int64_t>(modulus_);
  std::int64_t r = value % m;
  if (r < 0) r += m;
  entries_[index(row, col)] = static_cast<u64>(r);
}

Partition cokernel_type(const MatrixOverLocalRing& matrix) {
  const int n = matrix.n();
  const int d = matrix.d();
  const u64 m = matrix.modulus();
  const u64 p = static_cast<u64>(matrix.p());
  std::vector<u64> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = matrix.at(i, j);
  }
  auto at = [&](int i, int j) -> u64& { return a[static_cast<std::size_t>(i) * n + j]; };

  std::vector<int> parts;
  for (int r = 0; r < n; ++r) {
    int best = d;
    int pivot_row = -1;
    int pivot_col = -1;
    for (int i = r; i < n && best > 0; ++i) {
      for (int j = r; j < n; ++j) {
        const int v = valuation(at(i, j), p, d);
        if (v < best) {
          best = v;
          pivot_row = i;
          pivot_col = j;
          if (v == 0) break;
        }
      }
    }
    if (pivot_row < 0) {
      // Remaining block is zero mod p^d.
      for (int k = r; k < n; ++k) parts.push_back(d);
      break;
    }
    if (pivot_row != r) {
      for (int j = 0; j < n; ++j) std::swap(at(r, j), at(pivot_row, j));
    }
    if (pivot_col != r) {
      for (int i = 0; i < n; ++i) std::swap(at(i, r), at(i, pivot_col));
    }
    u64 pv = 1;
    for (int k = 0; k < best; ++k) pv *= p;
    // Pivot = p^v · unit; scale row r so the pivot becomes exactly p^v.
    const u64 unit_inverse = inverse_mod((at(r, r) / pv) % m, m);
    for (int j = r; j < n; ++j) at(r, j) = mulmod(at(r, j), unit_inverse, m);
    for (int i = r + 1; i < n; ++i) {
      if (at(i, r) == 0) continue;
      const u64 factor = at(i, r) / pv;
      for (int j = r; j < n; ++j) at(i, j) = submod(at(i, j), mulmod(factor, at(r, j), m), m);
    }
    for (int j = r + 1; j < n; ++j) {
      if (at(r, j) == 0) continue;
      const u64 factor = at(r, j) / pv;
      for (int i = r; i < n; ++i) at(i, j) = submod(at(i, j), mulmod(factor, at(i, r), m), m);
    }
    if (best > 0) parts.push_back(best);
  }
  std::sort(parts.rbegin(), parts.rend());
  return Partition(parts);
}

void SimConfig::validate() const {
  if (p < 2) throw DomainError("p must be at least 2");
  if (d < 1) throw DomainError("d must be positive");
  if (n < 1) throw DomainError("n must be positive");
  if (sample_count < 1) throw DomainError("sample_count must be positive");
  if (shard_count < 1) throw DomainError("shard_count must be positive");
  if (static_cast<u64>(shard_count) > sample_count) throw DomainError("more shards than samples");
  if (threads < 0) throw DomainError("thread count must be nonnegative");
  if (moment_cap < 0) throw DomainError("moment cap must be nonnegative");
  power(p, d);
}

int default_thread_count() {
  if (const char* env = std::getenv("ABELMOMENTS_THREADS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

MatrixOverLocalRing sample_matrix(const SimConfig& config, std::uint64_t index) {
  MatrixOverLocalRing matrix(config.n, config.p, config.d);
  CounterRng rng(config.seed, index);
  for (int i = 0; i < config.n; ++i) {
    for (int j = 0; j < config.n; ++j) {
      matrix.set(i, j, static_cast<std::int64_t>(rng.uniform_below(matrix.modulus())));
    }
  }
  return matrix;
}

EmpiricalResult sample_empirical(const SimConfig& config, const MatrixSource& source) {
  config.validate();
  using Tally = std::map<Partition, u64, GradedOrder>;
  const u64 total = config.sample_count;
  const auto shards = static_cast<u64>(config.shard_count);
  std::vector<Tally> tallies(shards);

  // Shard s owns the contiguous index range [s·N/S, (s+1)·N/S).
  auto run_shard = [&](u64 shard) {
    const u64 begin = shard * total / shards;
    const u64 end = (shard + 1) * total / shards;
    Tally& tally = tallies[shard];
    for (u64 index = begin; index < end; ++index) {
      const MatrixOverLocalRing matrix = source ? source(index) : sample_matrix(config, index);
      ++tally[cokernel_type(matrix)];
    }
  };

  const u64 workers = std::min<u64>(shards, static_cast<u64>(config.threads > 0 ? config.threads
                                                                                   : default_thread_count()));
  if (workers <= 1) {
    for (u64 s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    for (u64 w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (u64 s = w; s < shards; s += workers) run_shard(s);
      });
    }
    for (auto& thread : pool) thread.join();
  }

  EmpiricalResult result;
  for (const Tally& tally : tallies) {
    for (const auto& [type, count] : tally) result.counts[type] += count;
  }
  result.distribution.p = config.p;
  const BigInt denominator(static_cast<unsigned long>(total));
  for (const auto& [type, count] : result.counts) {
    result.distribution.masses.emplace(type, Rational(BigInt(static_cast<unsigned long>(count)), denominator));
  }

  result.moments.p = config.p;
  const int cap = config.effective_moment_cap();
  for (const Partition& columns : enumerate_up_to(config.d * cap)) {
    // Probe μ with μ_1 ≤ d and len(μ) ≤ cap, i.e. μ' fits a cap × d box transposed.
    if (columns.length() > static_cast<std::size_t>(config.d) || columns[0] > cap) continue;
    const Partition mu = columns.conjugate();
    BigInt weighted(0);
    for (const auto& [type, count] : result.counts) {
      if (!contains(mu, type)) continue;
      weighted += hl::surjection_count(type, mu, config.p) * BigInt(static_cast<unsigned long>(count));
    }
    if (weighted != 0) result.moments.entries.emplace(mu, Rational(weighted, denominator));
  }
  return result;
}

ClosedLoopReport closed_loop_report(const SimConfig& config, int probe_depth, const Rational& gap_tolerance,
                                    const MatrixSource& source) {
  if (probe_depth < 0) throw DomainError("probe depth must be nonnegative");
  ClosedLoopReport report;
  report.config = config;
  report.probe_depth = probe_depth;
  report.gap_tolerance = gap_tolerance;
  report.empirical = sample_empirical(config, source);
  const int cap = config.effective_moment_cap();
  for (const Partition& nu : enumerate_up_to(probe_depth)) {
    if (nu[0] > config.d || static_cast<int>(nu.length()) > cap) continue;
    ReportRow row;
    row.nu = nu;
    auto it = report.empirical.distribution.masses.find(nu);
    row.empirical = it == report.empirical.distribution.masses.end() ? Rational(0) : it->second;
    InversionResult inverted = invert(report.empirical.moments, nu, TruncationPolicy::capped(cap));
    row.inverted = inverted.value;
    row.diagnostics = std::move(inverted.diagnostics);
    row.gap = (row.empirical - row.inverted).abs();
    row.flagged = row.gap > gap_tolerance;
    report.max_gap = std::max(report.max_gap, row.gap);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace abelmoments::sim
