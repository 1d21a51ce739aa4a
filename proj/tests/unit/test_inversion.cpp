#include <doctest.h>

#include <random>

#include "abelmoments/group_oracle.hpp"
#include "abelmoments/inversion.hpp"
#include "abelmoments/qseries.hpp"

using namespace abelmoments;

namespace {

Distribution point_mass(long p, const Partition& lambda) {
  Distribution d;
  d.p = p;
  d.masses[lambda] = Rational(1);
  return d;
}

// Cohen-Lenstra mass ∏(1-p^{-i}) / |Aut G| for G = Z/p.
Rational cohen_lenstra_cyclic(long p, int terms) { return euler_product(Rational(1, p), terms) / Rational(p - 1); }

}  // namespace

TEST_CASE("moments agree with brute-force moments") {
  Distribution d;
  d.p = 2;
  d.masses[Partition{2, 1}] = Rational(1, 3);
  d.masses[Partition{1, 1}] = Rational(1, 6);
  d.masses[Partition{}] = Rational(1, 2);
  const MomentTable table = moments_from_distribution(d);
  for (const Partition& mu : enumerate_up_to(4)) {
    CHECK(table.at(mu) == oracle::exact_moment(d.masses, mu, 2));
  }
  CHECK(table.finite());
  CHECK(table.max_first_column() == 2);
}

TEST_CASE("point masses invert to indicators") {
  for (long p : {2L, 3L, 5L}) {
    for (const Partition& lambda : enumerate_up_to(4)) {
      const MomentTable table = moments_from_distribution(point_mass(p, lambda));
      for (const Partition& nu : enumerate_up_to(4)) {
        CHECK(invert(table, nu, TruncationPolicy::exact()).value == Rational(nu == lambda ? 1 : 0));
      }
    }
  }
}

TEST_CASE("random round trips are exact") {
  std::mt19937_64 rng(5);
  const auto pool = enumerate_up_to(4);
  for (int trial = 0; trial < 10; ++trial) {
    Distribution d;
    d.p = trial % 2 == 0 ? 2 : 5;
    long total = 0;
    std::map<Partition, long, GradedOrder> w;
    for (int i = 0; i < 4; ++i) {
      const long x = static_cast<long>(rng() % 10) + 1;
      w[pool[rng() % pool.size()]] += x;
      total += x;
    }
    for (const auto& [lambda, x] : w) d.masses[lambda] = Rational(x, total);
    const MomentTable table = moments_from_distribution(d);
    for (const Partition& nu : pool) {
      const auto it = d.masses.find(nu);
      CHECK(invert(table, nu, TruncationPolicy::exact()).value == (it == d.masses.end() ? Rational(0) : it->second));
    }
  }
}

TEST_CASE("all-ones moments give the Cohen-Lenstra masses") {
  const MomentTable ones = MomentTable::constant(3, Rational(1));
  const InversionResult capped = invert(ones, Partition{1}, TruncationPolicy::capped(30));
  CHECK(std::fabs((capped.value - cohen_lenstra_cyclic(3, 200)).to_double()) < 1e-12);
  CHECK(capped.diagnostics.partial_sums.size() == 30);
  CHECK(capped.diagnostics.cap == 30);
  CHECK_FALSE(capped.diagnostics.heuristic);

  const InversionResult adaptive =
      invert(ones, Partition{1}, TruncationPolicy::adaptive_until(Rational(1, 1000000000), 3, 200));
  CHECK(adaptive.diagnostics.heuristic);
  CHECK(adaptive.diagnostics.converged);
  CHECK(std::fabs((adaptive.value - capped.value).to_double()) < 1e-9);
}

TEST_CASE("adaptive truncation reports non-convergence") {
  const MomentTable ones = MomentTable::constant(2, Rational(1));
  try {
    invert(ones, Partition{}, TruncationPolicy::adaptive_until(Rational(1, BigInt("1000000000000000000000000000000")), 3, 4));
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK_FALSE(e.diagnostics().converged);
    CHECK(e.diagnostics().partial_sums.size() >= 4);
  }
  CHECK_THROWS_AS(invert(ones, Partition{}, TruncationPolicy::adaptive_until(Rational(0), 3, 10)), DomainError);
}

TEST_CASE("truncation mode misuse is rejected") {
  const MomentTable ones = MomentTable::constant(2, Rational(1));
  CHECK_THROWS_AS(invert(ones, Partition{}, TruncationPolicy::exact()), DomainError);
  CHECK_THROWS_AS(invert(ones, Partition{1, 1, 1}, TruncationPolicy::capped(2)), DomainError);
  MomentTable partial;
  partial.p = 2;
  partial.provider = [](const Partition& mu) -> std::optional<Rational> {
    if (mu.length() > 1) return std::nullopt;
    return Rational(1);
  };
  CHECK_THROWS_AS(invert(partial, Partition{}, TruncationPolicy::capped(3)), DomainError);
}

TEST_CASE("fixed level inversion") {
  for (long p : {2L, 3L}) {
    Distribution d;
    d.p = p;
    d.masses[Partition{2}] = Rational(1, 2);
    d.masses[Partition{1, 1}] = Rational(1, 4);
    d.masses[Partition{3, 1}] = Rational(1, 4);
    const MomentTable table = moments_from_distribution(d);
    // Reductions mod p: Z/p^2 -> Z/p, (Z/p)^2 -> (Z/p)^2, Z/p^3 + Z/p -> (Z/p)^2.
    CHECK(invert_fixed_level(table, Partition{1}, 1, TruncationPolicy::exact()).value == Rational(1, 2));
    CHECK(invert_fixed_level(table, Partition{1, 1}, 1, TruncationPolicy::exact()).value == Rational(1, 2));
    CHECK(invert_fixed_level(table, Partition{}, 1, TruncationPolicy::exact()).value == Rational(0));
    // Mod p^2: Z/p^2, (Z/p)^2, Z/p^2 + Z/p.
    CHECK(invert_fixed_level(table, Partition{2, 1}, 2, TruncationPolicy::exact()).value == Rational(1, 4));
    CHECK_THROWS_AS(invert_fixed_level(table, Partition{2}, 1, TruncationPolicy::exact()), DomainError);
    CHECK_THROWS_AS(invert_fixed_level(table, Partition{}, 0, TruncationPolicy::exact()), DomainError);
  }
}

TEST_CASE("multi-prime inversion") {
  MultiDistribution d;
  d.primes = {2, 3};
  d.masses[{Partition{1}, Partition{}}] = Rational(1, 3);
  d.masses[{Partition{}, Partition{2}}] = Rational(2, 3);
  const MultiMomentTable table = multi_moments_from_distribution(d);
  CHECK(invert_multi(table, {Partition{1}, Partition{}}, TruncationPolicy::exact()).value == Rational(1, 3));
  CHECK(invert_multi(table, {Partition{}, Partition{2}}, TruncationPolicy::exact()).value == Rational(2, 3));
  CHECK(invert_multi(table, {Partition{}, Partition{}}, TruncationPolicy::exact()).value == Rational(0));
  CHECK_THROWS_AS(invert_multi(table, {Partition{}}, TruncationPolicy::exact()), DomainError);
  CHECK_THROWS_AS(validate_primes({2, 2}), DomainError);
  CHECK_THROWS_AS(validate_primes({1}), DomainError);

  MultiMomentTable bad;
  bad.primes = {2, 3};
  bad.factors = {MomentTable::constant(2, Rational(1)), MomentTable::constant(5, Rational(1))};
  CHECK_THROWS_AS(invert_multi(bad, {Partition{}, Partition{}}, TruncationPolicy::capped(5)), DomainError);
}

TEST_CASE("all-ones factored table factors the answer") {
  MultiMomentTable ones;
  ones.primes = {2, 3};
  ones.factors = {MomentTable::constant(2, Rational(1)), MomentTable::constant(3, Rational(1))};
  const Rational joint = invert_multi(ones, {Partition{1}, Partition{}}, TruncationPolicy::capped(12)).value;
  const Rational a = invert(ones.factors[0], Partition{1}, TruncationPolicy::capped(12)).value;
  const Rational b = invert(ones.factors[1], Partition{}, TruncationPolicy::capped(12)).value;
  CHECK(joint == a * b);
}

TEST_CASE("distribution validation") {
  Distribution d;
  d.p = 2;
  d.masses[Partition{1}] = Rational(3, 2);
  CHECK_THROWS_AS(d.validate(), DomainError);
  d.masses[Partition{1}] = Rational(-1, 2);
  CHECK_THROWS_AS(d.validate(), DomainError);
}
