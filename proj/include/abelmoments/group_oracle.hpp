#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "abelmoments/partition.hpp"
#include "abelmoments/rational.hpp"

// Brute-force computations in finite abelian p-groups G_λ = ⊕ Z/p^{λ_i}.
// Nothing here uses symmetric functions; this is the ground truth the
// closed forms are checked against.

namespace abelmoments::oracle {

/// G_λ at a fixed prime (or residue cardinality) p.
struct AbelianGroupType {
  Partition lambda;
  long p = 2;

  BigInt order() const;
};

/// Element of G_λ as a coordinate tuple, coordinate i reduced mod p^{λ_i}.
struct GroupElement {
  std::vector<std::uint64_t> coordinates;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Small finite abelian group with elements indexed by a mixed-radix code.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(AbelianGroupType type);

  std::uint64_t order() const { return order_; }
  const AbelianGroupType& type() const { return type_; }

  GroupElement decode(std::uint64_t code) const;
  std::uint64_t encode(const GroupElement& element) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  /// k · x.
  std::uint64_t scale(std::uint64_t x, std::uint64_t k) const;
  /// Additive order of x.
  std::uint64_t element_order(std::uint64_t x) const;

  /// Every element killed by p^e.
  std::vector<std::uint64_t> annihilated_by_power(int e) const;

 private:
  AbelianGroupType type_;
  std::vector<std::uint64_t> moduli_;
  std::uint64_t order_ = 1;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Thrown when a brute-force enumeration would exceed its work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// #Sur(G_λ, G_μ) by enumerating generator images. A homomorphism is fixed by
/// sending generator i (order p^{λ_i}) to any element killed by p^{λ_i}; it is
/// surjective when those images generate G_μ. Tuples are grouped by the
/// subgroup their prefix generates, so the count is exact while the work is
/// (#subgroups reached) × (candidate images) per generator. `budget` bounds
/// that work and BudgetExceeded is thrown past it.
BigInt brute_sur_count(const Partition& lambda, const Partition& mu, long p,
                       std::uint64_t budget = kDefaultBudget);

/// #Hom(G_λ, G_μ) as the product over generators of the candidate image counts.
BigInt brute_hom_count(const Partition& lambda, const Partition& mu, long p);

/// Σ_ν mass(ν) · #Sur(G_ν, G_μ) with brute-force surjection counts.
/// Throws DomainError on a negative mass.
Rational exact_moment(const std::map<Partition, Rational, GradedOrder>& dist, const Partition& mu, long p,
                      std::uint64_t budget = kDefaultBudget);

}  // namespace abelmoments::oracle
