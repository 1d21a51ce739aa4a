// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abelmoments/group_oracle.hpp"
#include "abelmoments/hall_littlewood.hpp"
#include "abelmoments/inversion.hpp"
#include "abelmoments/json_io.hpp"
#include "abelmoments/macdonald.hpp"
#include "abelmoments/qseries.hpp"
#include "abelmoments/simulator.hpp"
#include "oracles.hpp"

using namespace abelmoments;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.fail(std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > budget_seconds) outcome.fail("took " + std::to_string(elapsed) + " s");
  if (!outcome.pass) ++failures;
  std::printf("[%s] %2d %s (%.2f s)%s%s\n", outcome.pass ? "PASS" : "FAIL", id, title.c_str(), elapsed,
              outcome.detail.empty() ? "" : " : ", outcome.detail.c_str());
  std::fflush(stdout);
}

std::vector<Partition> with_order_at_most(long p, long bound) {
  std::vector<Partition> out;
  int max_size = 0;
  for (long order = p; order <= bound; order *= p) ++max_size;
  for (const Partition& lambda : enumerate_up_to(max_size)) out.push_back(lambda);
  return out;
}

Distribution random_distribution(std::mt19937_64& rng, long p) {
  const std::vector<Partition> pool = enumerate_up_to(5);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<long> weight(1, 97);
  std::uniform_int_distribution<int> support_size(1, 8);
  std::map<Partition, long, GradedOrder> weights;
  const int k = support_size(rng);
  for (int i = 0; i < k; ++i) weights[pool[pick(rng)]] += weight(rng);
  long total = 0;
  for (const auto& [_, w] : weights) total += w;
  Distribution dist;
  dist.p = p;
  for (const auto& [lambda, w] : weights) dist.masses[lambda] = Rational(w, total);
  return dist;
}

}  // namespace

int main() {
  criterion(1, "surjection closed form equals brute force (|G| <= 64, 81, 125 at p = 2, 3, 5)", 120, [] {
    Outcome o;
    long checked = 0;
    for (auto [p, bound] : std::vector<std::pair<long, long>>{{2, 64}, {3, 81}, {5, 125}}) {
      const auto groups = with_order_at_most(p, bound);
      for (const Partition& lambda : groups) {
        for (const Partition& mu : groups) {
          ++checked;
          const BigInt brute = oracle::brute_sur_count(lambda, mu, p, 1'000'000'000);
          const BigInt closed = hl::surjection_count(lambda, mu, p);
          if (brute != closed) {
            o.fail("p=" + std::to_string(p) + " " + lambda.str() + " -> " + mu.str() + ": " + brute.get_str() +
                   " vs " + closed.get_str());
          }
        }
      }
    }
    if (o.pass) o.detail = std::to_string(checked) + " pairs";
    return o;
  });

  criterion(2, "cancellation identity for nu in lambda, |lambda| <= 8, t in {1/2, 1/3, 2/5}", 60, [] {
    Outcome o;
    long checked = 0;
    for (const Rational& t : {Rational(1, 2), Rational(1, 3), Rational(2, 5)}) {
      for (const Partition& lambda : enumerate_up_to(8)) {
        for (const Partition& nu : sub_partitions(lambda)) {
          ++checked;
          const Rational got = hl::cancellation_sum(lambda, nu, t);
          if (got != Rational(lambda == nu ? 1 : 0)) o.fail(lambda.str() + "," + nu.str() + " t=" + t.str());
        }
      }
    }
    if (o.pass) o.detail = std::to_string(checked) + " cases";
    return o;
  });

  criterion(3, "inversion coefficient equals the triple product, |nu|, |mu| <= 8", 60, [] {
    Outcome o;
    long nonzero = 0;
    const auto all = enumerate_up_to(8);
    for (const Rational& t : {Rational(1, 2), Rational(1, 3)}) {
      for (const Partition& nu : all) {
        for (const Partition& mu : all) {
          const Rational coefficient = hl::inversion_coefficient(nu, mu, t);
          const Rational triple = hl::principal_P(nu, t, t) *
                                  hl::qw_skew_Q_one(mu.conjugate(), nu.conjugate(), -t, t) *
                                  hl::principal_Q(mu, Rational(1), t);
          if (coefficient != triple) o.fail(nu.str() + "," + mu.str() + " t=" + t.str());
          const bool support = interlaces(nu.conjugate(), mu.conjugate());
          if (!support && !coefficient.is_zero()) o.fail("nonzero off support at " + nu.str() + "," + mu.str());
          if (support && coefficient.is_zero()) o.fail("zero on support at " + nu.str() + "," + mu.str());
          if (support) ++nonzero;
        }
      }
    }
    if (o.pass) o.detail = std::to_string(nonzero) + " nonzero coefficients";
    return o;
  });

  criterion(4, "moment round trip on 60 random distributions (|support| <= 5, p in {2, 3})", 120, [] {
    Outcome o;
    std::mt19937_64 rng(20240601);
    int masses = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const long p = trial % 2 == 0 ? 2 : 3;
      const Distribution dist = random_distribution(rng, p);
      const MomentTable table = moments_from_distribution(dist);
      for (const Partition& nu : enumerate_up_to(5)) {
        const auto it = dist.masses.find(nu);
        const Rational want = it == dist.masses.end() ? Rational(0) : it->second;
        const Rational got = invert(table, nu, TruncationPolicy::exact()).value;
        ++masses;
        if (got != want) o.fail("trial " + std::to_string(trial) + " at " + nu.str() + ": " + got.str());
      }
    }
    if (o.pass) o.detail = std::to_string(masses) + " masses recovered";
    return o;
  });

  criterion(5, "half mixture {0: 1/2, Z/p: 1/2} inverts to 1/2 at nu = [] and [1], p in {2, 3, 5}", 10, [] {
    Outcome o;
    for (long p : {2L, 3L, 5L}) {
      Distribution dist;
      dist.p = p;
      dist.masses[Partition()] = Rational(1, 2);
      dist.masses[Partition({1})] = Rational(1, 2);
      const MomentTable table = moments_from_distribution(dist);
      // M_0 = 1 and M_{Z/p} = (p - 1) / 2 by hand.
      if (table.at(Partition()) != Rational(1) || table.at(Partition({1})) != Rational(p - 1, 2)) {
        o.fail("moments at p=" + std::to_string(p));
      }
      for (const Partition& nu : {Partition(), Partition({1})}) {
        const Rational got = invert(table, nu, TruncationPolicy::exact()).value;
        if (got != Rational(1, 2)) o.fail("p=" + std::to_string(p) + " nu=" + nu.str() + ": " + got.str());
      }
    }
    return o;
  });

  criterion(6, "all-ones moments at p = 2, cap 40, agree with (1/2;1/2)_inf within 1e-9", 10, [] {
    Outcome o;
    const InversionResult result =
        invert(MomentTable::constant(2, Rational(1)), Partition(), TruncationPolicy::capped(40));
    const Rational product = euler_product(Rational(1, 2), 100);
    const double gap = std::fabs((result.value - product).to_double());
    const double series_gap = std::fabs(result.value.to_double() - testing::pentagonal_series(0.5, 20));
    if (!(gap < 1e-9)) o.fail("gap to product " + std::to_string(gap));
    if (!(series_gap < 1e-9)) o.fail("gap to pentagonal series " + std::to_string(series_gap));
    std::ostringstream s;
    s << "value " << result.value.decimal(12) << ", gap " << gap;
    if (o.pass) o.detail = s.str();
    return o;
  });

  criterion(7, "fixed level d = 1 on G = Z/p^2: 1 at [1], 0 at [], p in {2, 3}", 10, [] {
    Outcome o;
    for (long p : {2L, 3L}) {
      Distribution dist;
      dist.p = p;
      dist.masses[Partition({2})] = Rational(1);
      const MomentTable table = moments_from_distribution(dist);
      const Rational at_one = invert_fixed_level(table, Partition({1}), 1, TruncationPolicy::exact()).value;
      const Rational at_zero = invert_fixed_level(table, Partition(), 1, TruncationPolicy::exact()).value;
      if (at_one != Rational(1)) o.fail("p=" + std::to_string(p) + " at [1]: " + at_one.str());
      if (at_zero != Rational(0)) o.fail("p=" + std::to_string(p) + " at []: " + at_zero.str());
    }
    return o;
  });

  criterion(8, "multi-prime: Z/6 indicator and product distributions over P = {2, 3}", 60, [] {
    Outcome o;
    const std::vector<long> primes{2, 3};
    const auto small = enumerate_up_to(2);

    MultiDistribution point;
    point.primes = primes;
    point.masses[{Partition({1}), Partition({1})}] = Rational(1);
    const MultiMomentTable point_table = multi_moments_from_distribution(point);
    int checked = 0;
    for (const Partition& a : small) {
      for (const Partition& b : small) {
        const Rational got = invert_multi(point_table, {a, b}, TruncationPolicy::exact()).value;
        const Rational want(a == Partition({1}) && b == Partition({1}) ? 1 : 0);
        ++checked;
        if (got != want) o.fail("Z/6 at (" + a.str() + "," + b.str() + "): " + got.str());
      }
    }

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 6; ++trial) {
      Distribution d2 = random_distribution(rng, 2);
      Distribution d3 = random_distribution(rng, 3);
      MultiDistribution joint;
      joint.primes = primes;
      for (const auto& [a, ma] : d2.masses) {
        for (const auto& [b, mb] : d3.masses) joint.masses[{a, b}] = ma * mb;
      }
      const MultiMomentTable dense = multi_moments_from_distribution(joint);
      MultiMomentTable factored;
      factored.primes = primes;
      factored.factors = {moments_from_distribution(d2), moments_from_distribution(d3)};
      for (const Partition& a : small) {
        for (const Partition& b : small) {
          const Rational single = invert(factored.factors[0], a, TruncationPolicy::exact()).value *
                                  invert(factored.factors[1], b, TruncationPolicy::exact()).value;
          const Rational from_dense = invert_multi(dense, {a, b}, TruncationPolicy::exact()).value;
          const Rational from_factors = invert_multi(factored, {a, b}, TruncationPolicy::exact()).value;
          ++checked;
          if (from_dense != single || from_factors != single) {
            o.fail("product trial " + std::to_string(trial) + " at (" + a.str() + "," + b.str() + ")");
          }
        }
      }
    }
    if (o.pass) o.detail = std::to_string(checked) + " cases";
    return o;
  });

  criterion(9, "Macdonald core: triangularity, orthogonality, Schur at q = t, specs cancel, beta duality", 300, [] {
    Outcome o;
    const mac::MacdonaldParams params(Rational(1, 3), Rational(1, 2));
    int checks = 0;
    for (int n = 0; n <= 6; ++n) {
      const auto parts = partitions_of(n);
      std::vector<mac::SymmetricFunction> ps;
      for (const Partition& lambda : parts) {
        ps.push_back(mac::macdonald_P(lambda, params, 6));
        const auto& f = ps.back();
        ++checks;
        if (f.coefficient(lambda) != Rational(1)) o.fail("not monic at " + lambda.str());
        for (const auto& [mu, c] : f.terms()) {
          if (!testing::dominated_by(mu, lambda)) o.fail("not triangular at " + lambda.str() + " term " + mu.str());
        }
      }
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          ++checks;
          if (!mac::scalar_product(ps[i], ps[j], params).is_zero()) {
            o.fail("not orthogonal: " + parts[i].str() + ", " + parts[j].str());
          }
        }
      }
    }

    const mac::MacdonaldParams diagonal(Rational(1, 2), Rational(1, 2));
    for (const Partition& lambda : enumerate_up_to(5)) {
      const auto f = mac::macdonald_P(lambda, diagonal, 5);
      const auto schur = testing::schur_monomial_expansion(lambda);
      ++checks;
      for (const Partition& mu : partitions_of(lambda.size())) {
        const auto it = schur.find(mu);
        const Rational want(it == schur.end() ? 0 : it->second);
        if (f.coefficient(mu) != want) o.fail("Schur mismatch at " + lambda.str() + " m" + mu.str());
      }
    }

    for (const Partition& lambda : enumerate_up_to(4)) {
      for (const Partition& mu : sub_partitions(lambda)) {
        ++checks;
        const Rational got = mac::specs_cancel_check(lambda, mu, Rational(2, 7), params, 4);
        if (got != Rational(lambda == mu ? 1 : 0)) o.fail("specs cancel at " + lambda.str() + "," + mu.str());
      }
    }

    const std::vector<std::vector<Rational>> alphabets{
        {Rational(1, 2), Rational(1, 3)}, {Rational(1, 5), Rational(-2, 7)}, {Rational(3, 4), Rational(1, 9)}};
    for (const auto& c : alphabets) {
      for (const Partition& lambda : enumerate_up_to(4)) {
        for (const Partition& mu : sub_partitions(lambda)) {
          ++checks;
          if (!mac::beta_duality_check(lambda, mu, c, params, 4)) {
            o.fail("beta duality at " + lambda.str() + "," + mu.str());
          }
        }
      }
    }
    if (o.pass) o.detail = std::to_string(checks) + " checks";
    return o;
  });

  criterion(10, "simulator closed loop p = 2, d = 1, n = 10, N = 200000", 300, [] {
    Outcome o;
    sim::SimConfig config;
    config.p = 2;
    config.d = 1;
    config.n = 10;
    config.sample_count = 200000;
    config.seed = 1729;

    std::string reference;
    sim::ClosedLoopReport first;
    for (int shards : {1, 3, 8}) {
      config.shard_count = shards;
      const sim::ClosedLoopReport report = sim::closed_loop_report(config, 2);
      const std::string text = io::to_json(report).dump();
      if (reference.empty()) {
        reference = text;
        first = report;
      } else if (text != reference) {
        o.fail("report differs at " + std::to_string(shards) + " shards");
      }
    }

    Rational worst;
    for (const Partition& nu : {Partition(), Partition({1}), Partition({1, 1})}) {
      bool found = false;
      for (const auto& row : first.rows) {
        if (row.nu != nu) continue;
        found = true;
        if (!(row.gap < Rational(1, 50))) o.fail("gap at " + nu.str() + " is " + row.gap.decimal(6));
        if (worst < row.gap) worst = row.gap;
      }
      if (!found) o.fail("no row for " + nu.str());
    }

    config.shard_count = 1;
    int mismatches = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      const sim::MatrixOverLocalRing m = sim::sample_matrix(config, i);
      std::vector<std::vector<std::int64_t>> rows(m.n(), std::vector<std::int64_t>(m.n()));
      for (int r = 0; r < m.n(); ++r) {
        for (int c = 0; c < m.n(); ++c) rows[r][c] = static_cast<std::int64_t>(m.at(r, c));
      }
      const int corank = m.n() - testing::rank_mod_p(rows, m.p());
      if (sim::cokernel_type(m) != Partition(std::vector<int>(corank, 1))) ++mismatches;
    }
    if (mismatches > 0) o.fail(std::to_string(mismatches) + " cokernel types disagree with the rank");
    if (o.pass) o.detail = "max gap " + worst.decimal(6) + ", 10000 rank checks";
    return o;
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
