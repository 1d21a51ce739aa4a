#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace abelmoments {

/// Integer partition stored as its nonzero parts in weakly decreasing order.
///
/// Indexing is zero-based and returns 0 past the last stored part; λ_i is
/// `lambda[i - 1]`. The same type indexes abelian p-group types
/// (G_λ = ⊕ Z/p^{λ_i}) and symmetric-function bases.
class Partition {
 public:
  Partition() = default;
  /// Throws DomainError on negative or increasing entries; trailing zeros are dropped.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// Builds the partition whose conjugate is `columns`.
  static Partition from_conjugate(const std::vector<int>& columns);

  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  const std::vector<int>& parts() const { return parts_; }

  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int size() const;
  /// m_i(λ), the number of parts equal to i.
  int multiplicity(int i) const;
  Partition conjugate() const;
  /// n(λ) = Σ (i-1) λ_i.
  long n_stat() const;

  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  /// Plain lexicographic order on the part sequences.
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
};

std::ostream& operator<<(std::ostream& os, const Partition& p);

/// True iff λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ … (μ ≺ λ).
bool interlaces(const Partition& mu, const Partition& lambda);

/// True iff μ_i ≤ λ_i for all i (μ ⊂ λ).
bool contains(const Partition& mu, const Partition& lambda);

/// Orders by size first, then reverse lexicographic within a size. This is
/// the order every enumeration and serialized map in the library uses.
struct GradedOrder {
  bool operator()(const Partition& a, const Partition& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a > b;
  }
};

/// Partitions of exactly `n`, lexicographically descending.
std::vector<Partition> partitions_of(int n);

/// All partitions with |λ| ≤ max_size, graded then lexicographically descending.
std::vector<Partition> enumerate_up_to(int max_size);

/// All μ with μ' ≻ ν' and μ'_1 ≤ first_column_cap.
///
/// Ordered by μ'_1 ascending (one block per first-column length), and within a
/// block by μ' lexicographically descending. Throws DomainError when the cap
/// is below ν'_1.
std::vector<Partition> enumerate_conjugate_interlacing(const Partition& nu, int first_column_cap);

/// The single block of `enumerate_conjugate_interlacing` with μ'_1 == column.
std::vector<Partition> conjugate_interlacing_block(const Partition& nu, int column);

/// All μ ⊂ λ, graded order.
std::vector<Partition> sub_partitions(const Partition& lambda);

}  // namespace abelmoments
