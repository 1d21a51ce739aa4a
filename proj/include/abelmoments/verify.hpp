#pragma once

#include <string>
#include <vector>

#include "abelmoments/partition.hpp"
#include "abelmoments/rational.hpp"

// Identity suites that sweep an exact identity over every partition pair up
// to a size bound and count how many cases hold.

namespace abelmoments::verify {

struct SuiteOptions {
  int max_size = 4;
  Rational t{1, 2};
  Rational q{1, 3};
  Rational u{2, 7};
  long p = 2;
  std::vector<Rational> alphabet{Rational(1, 2), Rational(1, 3)};
};

struct Failure {
  Partition first;
  Partition second;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::vector<Failure> failures;

  bool ok() const { return passed == total; }
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// hl-cancellation   cancellation_sum(λ, ν, t) = 1(λ = ν) for ν ⊂ λ, |λ| ≤ max_size
/// hl-product        inversion_coefficient equals the principal/q-Whittaker triple product, |ν|, |μ| ≤ max_size
/// hl-cross          Hall-Littlewood closed form equals the generic engine at q = 0, μ ⊂ λ, |λ| ≤ max_size
/// specs-cancel      specs_cancel_check(λ, μ, u, (q, t)) = 1(λ = μ) for μ ⊂ λ, |λ| ≤ max_size
/// beta-duality      beta_duality_check over the alphabet for μ ⊂ λ, |λ| ≤ max_size
/// surjection        brute-force #Sur equals the closed form for |λ|, |μ| ≤ max_size at p
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace abelmoments::verify
