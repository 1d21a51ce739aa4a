#pragma once

#include "abelmoments/rational.hpp"

namespace abelmoments {

/// (a;q)_n = ∏_{i=1}^n (1 - a q^{i-1}). q = 0 is allowed (0^0 = 1).
Rational q_pochhammer(const Rational& a, const Rational& q, int n);

/// Gaussian binomial (q;q)_a / ((q;q)_b (q;q)_{a-b}); zero when b < 0 or b > a.
/// Throws DomainError if a < 0 or if a needed (q;q)_k vanishes (q = ±1).
Rational q_binomial(int a, int b, const Rational& q);

/// Truncated Euler product ∏_{k=1}^{terms} (1 - q^k) for |q| < 1.
Rational euler_product(const Rational& q, int terms);

/// C(k, 2) for k ≥ 0.
inline long choose2(long k) { return k * (k - 1) / 2; }

}  // namespace abelmoments
