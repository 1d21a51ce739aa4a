#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "abelmoments/inversion.hpp"
#include "abelmoments/partition.hpp"
#include "abelmoments/rational.hpp"

// Monte-Carlo cokernels of uniform random n×n matrices over Z/p^d.

namespace abelmoments::sim {

/// Square matrix with entries reduced mod p^d, row-major.
class MatrixOverLocalRing {
 public:
  MatrixOverLocalRing(int n, long p, int d);

  int n() const { return n_; }
  long p() const { return p_; }
  int d() const { return d_; }
  std::uint64_t modulus() const { return modulus_; }

  std::uint64_t at(int row, int col) const { return entries_[index(row, col)]; }
  void set(int row, int col, std::int64_t value);

 private:
  std::size_t index(int row, int col) const { return static_cast<std::size_t>(row) * n_ + col; }

  int n_;
  long p_;
  int d_;
  std::uint64_t modulus_;
  std::vector<std::uint64_t> entries_;
};

/// λ with cok(A) ≅ ⊕ Z/p^{λ_i}, from Smith reduction with minimum-valuation
/// pivots (ties to the lowest row, then column).
Partition cokernel_type(const MatrixOverLocalRing& matrix);

struct SimConfig {
  long p = 2;
  int d = 1;
  int n = 10;
  std::uint64_t sample_count = 1000;
  std::uint64_t seed = 1;
  int shard_count = 1;
  /// Worker threads; 0 means ABELMOMENTS_THREADS or the hardware count.
  int threads = 0;
  /// Probe set for empirical moments: μ with μ_1 ≤ d and len(μ) ≤ moment_cap.
  /// 0 means n, which covers every possible cokernel.
  int moment_cap = 0;

  void validate() const;
  int effective_moment_cap() const { return moment_cap > 0 ? moment_cap : n; }
};

/// Replaces random sampling for sample `index` (test hook).
using MatrixSource = std::function<MatrixOverLocalRing(std::uint64_t index)>;

/// Draws sample `index` of the stream keyed by `seed`.
MatrixOverLocalRing sample_matrix(const SimConfig& config, std::uint64_t index);

struct EmpiricalResult {
  std::map<Partition, std::uint64_t, GradedOrder> counts;
  Distribution distribution;  // masses count / N
  MomentTable moments;        // Σ count · #Sur(type, G_μ) / N over the probe set
};

EmpiricalResult sample_empirical(const SimConfig& config, const MatrixSource& source = {});

struct ReportRow {
  Partition nu;
  Rational empirical;
  Rational inverted;
  Rational gap;
  bool flagged = false;
  Diagnostics diagnostics;
};

struct ClosedLoopReport {
  SimConfig config;
  int probe_depth = 0;
  Rational gap_tolerance;
  EmpiricalResult empirical;
  std::vector<ReportRow> rows;
  Rational max_gap;
};

/// Samples, inverts the empirical moments (cap mode at the moment cap) for
/// every ν with |ν| ≤ probe_depth and ν_1 ≤ d, and lines the two up.
/// Rows whose gap exceeds `gap_tolerance` are flagged, never rejected.
ClosedLoopReport closed_loop_report(const SimConfig& config, int probe_depth,
                                    const Rational& gap_tolerance = Rational(1, 50),
                                    const MatrixSource& source = {});

/// Thread count from ABELMOMENTS_THREADS, else the hardware concurrency.
int default_thread_count();

}  // namespace abelmoments::sim
