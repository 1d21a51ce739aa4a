#include "abelmoments/qseries.hpp"

#include <string>

namespace abelmoments {

Rational q_pochhammer(const Rational& a, const Rational& q, int n) {
  if (n < 0) throw DomainError("q-Pochhammer with negative length " + std::to_string(n));
  Rational result(1);
  Rational power(1);  // q^{i-1}
  for (int i = 0; i < n; ++i) {
    result *= Rational(1) - a * power;
    power *= q;
  }
  return result;
}

Rational q_binomial(int a, int b, const Rational& q) {
  if (a < 0) throw DomainError("q-binomial with negative top index");
  if (b < 0 || b > a) return Rational(0);
  const Rational den = q_pochhammer(q, q, b) * q_pochhammer(q, q, a - b);
  if (den.is_zero()) throw DomainError("q-binomial denominator vanishes at q = " + q.str());
  return q_pochhammer(q, q, a) / den;
}

Rational euler_product(const Rational& q, int terms) {
  if (q.abs() >= Rational(1)) throw DomainError("Euler product needs |q| < 1, got " + q.str());
  if (terms < 1) throw DomainError("Euler product needs a positive number of terms");
  Rational result(1);
  Rational power = q;
  for (int k = 1; k <= terms; ++k) {
    result *= Rational(1) - power;
    power *= q;
  }
  return result;
}

}  // namespace abelmoments
