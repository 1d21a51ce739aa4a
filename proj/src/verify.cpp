#include "abelmoments/verify.hpp"

#include <functional>

#include "abelmoments/group_oracle.hpp"
#include "abelmoments/hall_littlewood.hpp"
#include "abelmoments/macdonald.hpp"

namespace abelmoments::verify {

namespace {

using Check = std::function<std::string(const Partition&, const Partition&)>;

// Runs `check` over every μ ⊂ λ with |λ| ≤ max_size; an empty string means pass.
void sweep_contained(SuiteResult& result, int max_size, const Check& check) {
  for (const Partition& lambda : enumerate_up_to(max_size)) {
    for (const Partition& mu : sub_partitions(lambda)) {
      ++result.total;
      std::string detail = check(lambda, mu);
      if (detail.empty()) {
        ++result.passed;
      } else {
        result.failures.push_back({lambda, mu, std::move(detail)});
      }
    }
  }
}

std::string expect_equal(const Rational& got, const Rational& want) {
  return got == want ? std::string() : "got " + got.str() + ", expected " + want.str();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hl-cancellation", "hl-product", "hl-cross",
                                              "specs-cancel",    "beta-duality", "surjection"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  SuiteResult result;
  result.name = name;
  if (options.max_size < 0) throw DomainError("max size must be nonnegative");

  if (name == "hl-cancellation") {
    sweep_contained(result, options.max_size, [&](const Partition& lambda, const Partition& nu) {
      return expect_equal(hl::cancellation_sum(lambda, nu, options.t), Rational(lambda == nu ? 1 : 0));
    });
  } else if (name == "hl-product") {
    const Rational& t = options.t;
    const auto all = enumerate_up_to(options.max_size);
    for (const Partition& nu : all) {
      for (const Partition& mu : all) {
        ++result.total;
        const Rational triple = hl::principal_P(nu, t, t) * hl::qw_skew_Q_one(mu.conjugate(), nu.conjugate(), -t, t) *
                                hl::principal_Q(mu, Rational(1), t);
        std::string detail = expect_equal(hl::inversion_coefficient(nu, mu, t), triple);
        if (detail.empty()) {
          ++result.passed;
        } else {
          result.failures.push_back({nu, mu, std::move(detail)});
        }
      }
    }
  } else if (name == "hl-cross") {
    const mac::MacdonaldParams params(Rational(0), options.t);
    const mac::Specialization principal = mac::geometric_alpha(options.t, options.t);
    sweep_contained(result, options.max_size, [&](const Partition& lambda, const Partition& mu) {
      const Rational engine =
          mac::specialize(mac::skew_function(mac::SkewKind::P, lambda, mu, params, options.max_size), principal);
      return expect_equal(engine, hl::skew_P_principal(lambda, mu, options.t, options.t));
    });
  } else if (name == "specs-cancel") {
    const mac::MacdonaldParams params(options.q, options.t);
    sweep_contained(result, options.max_size, [&](const Partition& lambda, const Partition& mu) {
      return expect_equal(mac::specs_cancel_check(lambda, mu, options.u, params, options.max_size),
                          Rational(lambda == mu ? 1 : 0));
    });
  } else if (name == "beta-duality") {
    const mac::MacdonaldParams params(options.q, options.t);
    sweep_contained(result, options.max_size, [&](const Partition& lambda, const Partition& mu) {
      const auto sides = mac::beta_duality_sides(lambda, mu, options.alphabet, params, options.max_size);
      return expect_equal(sides.beta_side, sides.alpha_side);
    });
  } else if (name == "surjection") {
    const auto all = enumerate_up_to(options.max_size);
    for (const Partition& lambda : all) {
      for (const Partition& mu : all) {
        ++result.total;
        const BigInt brute = oracle::brute_sur_count(lambda, mu, options.p);
        const BigInt formula = hl::surjection_count(lambda, mu, options.p);
        if (brute == formula) {
          ++result.passed;
        } else {
          result.failures.push_back({lambda, mu, "brute force " + brute.get_str() + ", closed form " + formula.get_str()});
        }
      }
    }
  } else {
    throw DomainError("unknown verification suite '" + name + "'");
  }
  return result;
}

}  // namespace abelmoments::verify
