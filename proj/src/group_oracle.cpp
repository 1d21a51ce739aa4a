#include "abelmoments/group_oracle.hpp"

#include <string>

namespace abelmoments::oracle {

namespace {

using Subgroup = std::vector<std::uint64_t>;  // membership bitset over element codes

std::uint64_t checked_power(long p, int e) {
  std::uint64_t value = 1;
  for (int i = 0; i < e; ++i) {
    if (value > UINT64_MAX / static_cast<std::uint64_t>(p)) throw BudgetExceeded("group order overflows 64 bits");
    value *= static_cast<std::uint64_t>(p);
  }
  return value;
}

bool has(const Subgroup& s, std::uint64_t x) { return (s[x / 64] >> (x % 64)) & 1U; }
void set(Subgroup& s, std::uint64_t x) { s[x / 64] |= std::uint64_t{1} << (x % 64); }

}  // namespace

BigInt AbelianGroupType::order() const {
  BigInt value;
  mpz_ui_pow_ui(value.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(lambda.size()));
  return value;
}

FiniteAbelianGroup::FiniteAbelianGroup(AbelianGroupType type) : type_(std::move(type)) {
  if (type_.p < 2) throw DomainError("group prime must be at least 2");
  for (int part : type_.lambda.parts()) {
    moduli_.push_back(checked_power(type_.p, part));
    if (order_ > UINT64_MAX / moduli_.back()) throw BudgetExceeded("group order overflows 64 bits");
    order_ *= moduli_.back();
  }
}

GroupElement FiniteAbelianGroup::decode(std::uint64_t code) const {
  GroupElement element;
  element.coordinates.reserve(moduli_.size());
  for (std::uint64_t m : moduli_) {
    element.coordinates.push_back(code % m);
    code /= m;
  }
  return element;
}

std::uint64_t FiniteAbelianGroup::encode(const GroupElement& element) const {
  std::uint64_t code = 0;
  for (std::size_t i = moduli_.size(); i-- > 0;) code = code * moduli_[i] + element.coordinates[i] % moduli_[i];
  return code;
}

std::uint64_t FiniteAbelianGroup::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t code = 0;
  std::uint64_t place = 1;
  for (std::uint64_t m : moduli_) {
    const std::uint64_t digit = (a % m + b % m) % m;
    code += digit * place;
    place *= m;
    a /= m;
    b /= m;
  }
  return code;
}

std::uint64_t FiniteAbelianGroup::scale(std::uint64_t x, std::uint64_t k) const {
  std::uint64_t code = 0;
  std::uint64_t place = 1;
  for (std::uint64_t m : moduli_) {
    const auto digit = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x % m) * (k % m)) % m);
    code += digit * place;
    place *= m;
    x /= m;
  }
  return code;
}

std::uint64_t FiniteAbelianGroup::element_order(std::uint64_t x) const {
  std::uint64_t order = 1;
  while (scale(x, order) != 0) order *= static_cast<std::uint64_t>(type_.p);
  return order;
}

std::vector<std::uint64_t> FiniteAbelianGroup::annihilated_by_power(int e) const {
  const std::uint64_t pe = checked_power(type_.p, e);
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < order_; ++x) {
    if (scale(x, pe) == 0) out.push_back(x);
  }
  return out;
}

BigInt brute_sur_count(const Partition& lambda, const Partition& mu, long p, std::uint64_t budget) {
  const FiniteAbelianGroup target({mu, p});
  const std::uint64_t n = target.order();
  if (n > budget) {
    throw BudgetExceeded("target group of order " + std::to_string(n) + " exceeds the enumeration budget; use the " +
                         "closed-form surjection_count instead");
  }
  const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
  Subgroup trivial(words, 0);
  set(trivial, 0);

  std::map<Subgroup, BigInt> states{{trivial, BigInt(1)}};
  std::uint64_t work = 0;
  for (int part : lambda.parts()) {
    const std::vector<std::uint64_t> images = target.annihilated_by_power(part);
    std::map<Subgroup, BigInt> next;
    for (const auto& [subgroup, ways] : states) {
      std::vector<std::uint64_t> members;
      for (std::uint64_t x = 0; x < n; ++x) {
        if (has(subgroup, x)) members.push_back(x);
      }
      // Distinct extensions ⟨H, x⟩ reached from this H, with multiplicities.
      std::map<Subgroup, BigInt> reached;
      for (std::uint64_t x : images) {
        work += 1;
        if (has(subgroup, x)) {
          reached[subgroup] += 1;
          continue;
        }
        Subgroup joined(words, 0);
        std::uint64_t multiple = 0;
        do {
          for (std::uint64_t h : members) set(joined, target.add(h, multiple));
          work += members.size();
          multiple = target.add(multiple, x);
        } while (multiple != 0);
        reached[joined] += 1;
      }
      for (auto& [joined, count] : reached) next[joined] += ways * count;
      if (work > budget) {
        throw BudgetExceeded("brute-force surjection count " + lambda.str() + " -> " + mu.str() + " at p = " +
                             std::to_string(p) + " exceeds the work budget of " + std::to_string(budget) +
                             "; use the closed-form surjection_count instead");
      }
    }
    states = std::move(next);
  }

  Subgroup whole(words, 0);
  for (std::uint64_t x = 0; x < n; ++x) set(whole, x);
  auto it = states.find(whole);
  return it == states.end() ? BigInt(0) : it->second;
}

BigInt brute_hom_count(const Partition& lambda, const Partition& mu, long p) {
  const FiniteAbelianGroup target({mu, p});
  BigInt total(1);
  for (int part : lambda.parts()) total *= static_cast<unsigned long>(target.annihilated_by_power(part).size());
  return total;
}

Rational exact_moment(const std::map<Partition, Rational, GradedOrder>& dist, const Partition& mu, long p,
                      std::uint64_t budget) {
  Rational total(0);
  for (const auto& [nu, mass] : dist) {
    if (mass.sign() < 0) throw DomainError("negative mass " + mass.str() + " at " + nu.str());
    if (mass.is_zero()) continue;
    total += mass * Rational(brute_sur_count(nu, mu, p, budget));
  }
  return total;
}

}  // namespace abelmoments::oracle
