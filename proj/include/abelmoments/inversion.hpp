#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abelmoments/partition.hpp"
#include "abelmoments/rational.hpp"

// Forward moments of random abelian p-groups and their inversion back to
// probabilities:
//
//   Pr(G ≅ G_ν) = Σ_{μ : μ' ≻ ν'} c(ν, μ; 1/p) · M_{G_μ},
//
// where c is hl::inversion_coefficient. The domain is infinite only in μ'_1,
// so truncation is always a cap on the first column length.

namespace abelmoments {

using PartitionMap = std::map<Partition, Rational, GradedOrder>;

/// Finitely supported law of a random abelian p-group: masses Pr(G ≅ G_ν).
struct Distribution {
  long p = 2;
  PartitionMap masses;

  Rational total_mass() const;
  /// Throws DomainError on negative masses or masses above one.
  void validate() const;
};

/// Values M_{G_μ} = E[#Sur(G, G_μ)].
///
/// A table without a provider is a finite map whose absent entries are zero;
/// this is what the moments of a finitely supported distribution look like
/// once every μ contained in some support element is listed. A provider
/// supplies values for infinite families and may decline (nullopt) a μ.
struct MomentTable {
  using Provider = std::function<std::optional<Rational>(const Partition&)>;

  long p = 2;
  PartitionMap entries;
  Provider provider;

  /// Entry, then provider; throws DomainError when neither knows μ.
  Rational at(const Partition& mu) const;
  bool finite() const { return !provider; }
  /// Largest μ'_1 over nonzero entries; moments vanish past it for finite tables.
  int max_first_column() const;

  /// M ≡ value on all μ (M ≡ 1 is the all-ones family).
  static MomentTable constant(long p, const Rational& value);
};

struct TruncationPolicy {
  enum class Mode { exact_finite_support, cap, adaptive };

  Mode mode = Mode::exact_finite_support;
  int first_column_cap = 0;            // cap mode
  Rational tolerance{1, 1'000'000'000};  // adaptive mode
  int window = 3;                      // adaptive mode
  int hard_cap = 200;                  // adaptive mode
  bool report_partial_sums = true;

  static TruncationPolicy exact() { return {}; }
  static TruncationPolicy capped(int cap);
  static TruncationPolicy adaptive_until(const Rational& tolerance, int window, int hard_cap);
  /// Exact for finite tables, otherwise the given cap.
  static TruncationPolicy default_for(const MomentTable& table, int cap_if_infinite);
};

std::string to_string(TruncationPolicy::Mode mode);

/// Partial sums are recorded after each first-column block (μ'_1 = m).
struct Diagnostics {
  TruncationPolicy::Mode mode = TruncationPolicy::Mode::exact_finite_support;
  int cap = 0;
  std::size_t terms = 0;
  std::vector<Rational> partial_sums;
  Rational last_block;
  bool converged = true;
  /// Set in adaptive mode: stopping is a heuristic, not a tail bound.
  bool heuristic = false;
  std::string note;
};

struct InversionResult {
  Rational value;
  Diagnostics diagnostics;
};

/// Raised when adaptive truncation exhausts its hard cap; carries the trace.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, Diagnostics diagnostics)
      : Error(what), diagnostics_(std::move(diagnostics)) {}
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

/// Moments of `dist` at each μ in `mus`, via closed-form surjection counts.
MomentTable moments_from_distribution(const Distribution& dist, const std::vector<Partition>& mus);
/// Every nonzero moment of `dist`: one entry per μ contained in a support element.
MomentTable moments_from_distribution(const Distribution& dist);

/// Pr(G ≅ G_ν) recovered from a moment table.
InversionResult invert(const MomentTable& moments, const Partition& nu, const TruncationPolicy& policy);

/// Pr(G / p^d G ≅ G_ν), summing only μ with μ_1 ≤ d. Requires ν_1 ≤ d.
InversionResult invert_fixed_level(const MomentTable& moments, const Partition& nu, int level,
                                   const TruncationPolicy& policy);

// --- several primes -------------------------------------------------------

using PartitionTuple = std::vector<Partition>;

std::string to_string(const PartitionTuple& tuple);

/// Law of a random group in A_P, as masses on tuples (λ(1), …, λ(k)).
struct MultiDistribution {
  std::vector<long> primes;
  std::map<PartitionTuple, Rational> masses;
};

/// Moments indexed by tuples. Either a dense finite map (absent = 0) or a
/// product of per-prime tables, M_{(μ(1),…,μ(k))} = ∏_i M^{(i)}_{μ(i)}, which is
/// the exact form for independent prime components.
struct MultiMomentTable {
  std::vector<long> primes;
  std::map<PartitionTuple, Rational> entries;
  std::vector<MomentTable> factors;

  bool factored() const { return !factors.empty(); }
  Rational at(const PartitionTuple& mus) const;
  bool finite() const;
  /// Per-prime largest μ(i)'_1 over nonzero entries.
  std::vector<int> max_first_columns() const;
};

/// Throws DomainError on duplicate primes or primes below 2.
void validate_primes(const std::vector<long>& primes);

MultiMomentTable multi_moments_from_distribution(const MultiDistribution& dist);

/// Pr(G ≅ G_{ν(1),…,ν(k)}(P)), with per-prime coefficient products.
InversionResult invert_multi(const MultiMomentTable& moments, const PartitionTuple& nus,
                             const TruncationPolicy& policy);

}  // namespace abelmoments
