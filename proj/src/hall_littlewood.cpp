#include "abelmoments/hall_littlewood.hpp"

#include <string>

#include "abelmoments/qseries.hpp"

namespace abelmoments::hl {

namespace {

void require_open_unit(const Rational& t, const char* what) {
  if (t <= Rational(0) || t >= Rational(1)) {
    throw DomainError(std::string(what) + " requires 0 < t < 1, got t = " + t.str());
  }
}

void require_principal(const Rational& t) {
  if (t.is_zero() || t.abs() >= Rational(1)) {
    throw DomainError("principal specialization requires 0 < |t| < 1, got t = " + t.str());
  }
}

void require_small_q(const Rational& q) {
  if (q.abs() >= Rational(1)) throw DomainError("q-Whittaker formulas require |q| < 1, got q = " + q.str());
}

}  // namespace

HLParams::HLParams(Rational t) : t_(std::move(t)) { require_open_unit(t_, "HLParams"); }

HLParams HLParams::from_residue_cardinality(long residue_cardinality) {
  if (residue_cardinality < 2) {
    throw DomainError("residue cardinality must be at least 2, got " + std::to_string(residue_cardinality));
  }
  return HLParams(Rational(1, residue_cardinality));
}

Rational principal_Q(const Partition& lambda, const Rational& u, const Rational& t) {
  require_principal(t);
  return u.pow(lambda.size()) * t.pow(lambda.n_stat());
}

Rational principal_P(const Partition& lambda, const Rational& u, const Rational& t) {
  Rational value = principal_Q(lambda, u, t);
  const Partition conj = lambda.conjugate();
  for (std::size_t i = 0; i < conj.length(); ++i) {
    value /= q_pochhammer(t, t, conj[i] - conj[i + 1]);
  }
  return value;
}

Rational skew_ratio(const Partition& lambda, const Partition& mu, const Rational& t, int columns) {
  require_open_unit(t, "skew_ratio");
  if (columns < mu[0]) throw DomainError("skew_ratio column count below mu_1");
  if (!contains(mu, lambda)) return Rational(0);
  const Partition lc = lambda.conjugate();
  const Partition mc = mu.conjugate();
  Rational value(1);
  for (std::size_t i = 0; i < static_cast<std::size_t>(columns); ++i) {
    const long l = lc[i];
    const long m = mc[i];
    value *= t.pow(choose2(l - m) - choose2(l));
    value *= q_pochhammer(t.pow(1 + l - m), t, mc[i] - mc[i + 1]);
  }
  return value;
}

Rational skew_ratio(const Partition& lambda, const Partition& mu, const Rational& t) {
  return skew_ratio(lambda, mu, t, mu[0]);
}

Rational skew_P_principal(const Partition& lambda, const Partition& mu, const Rational& u,
                          const Rational& t) {
  require_open_unit(t, "skew_P_principal");
  if (!contains(mu, lambda)) return Rational(0);
  return u.pow(lambda.size() - mu.size()) * skew_ratio(lambda, mu, t) * principal_P(lambda, Rational(1), t);
}

Rational qw_skew_P_one(const Partition& lambda, const Partition& mu, const Rational& x,
                       const Rational& q) {
  require_small_q(q);
  if (!interlaces(mu, lambda)) return Rational(0);
  Rational value = x.pow(lambda.size() - mu.size());
  for (std::size_t i = 0; i < mu.length(); ++i) {
    value *= q_binomial(lambda[i] - lambda[i + 1], lambda[i] - mu[i], q);
  }
  return value;
}

Rational qw_skew_Q_one(const Partition& lambda, const Partition& mu, const Rational& x,
                       const Rational& q) {
  require_small_q(q);
  if (!interlaces(mu, lambda)) return Rational(0);
  Rational value = x.pow(lambda.size() - mu.size()) / q_pochhammer(q, q, lambda[0] - mu[0]);
  for (std::size_t i = 0; i + 1 < lambda.length(); ++i) {
    value *= q_binomial(mu[i] - mu[i + 1], mu[i] - lambda[i + 1], q);
  }
  return value;
}

BigInt surjection_count(const Partition& lambda, const Partition& mu, long residue_cardinality) {
  const Rational t = HLParams::from_residue_cardinality(residue_cardinality).t();
  if (!contains(mu, lambda)) return BigInt(0);
  const Rational value =
      skew_P_principal(lambda, mu, t, t) / (principal_P(lambda, t, t) * principal_Q(mu, Rational(1), t));
  if (!value.is_integer() || value.sign() < 0) {
    throw InternalError("surjection count for " + lambda.str() + " -> " + mu.str() + " evaluated to " +
                        value.str() + ", not a nonnegative integer");
  }
  return value.numerator();
}

Rational inversion_coefficient(const Partition& nu, const Partition& mu, const Rational& t) {
  require_open_unit(t, "inversion_coefficient");
  const Partition nc = nu.conjugate();
  const Partition mc = mu.conjugate();
  if (!interlaces(nc, mc)) return Rational(0);
  Rational value = t.pow(nu.n_stat() + mu.n_stat() + mu.size());
  if ((mu.size() - nu.size()) % 2 != 0) value = -value;
  for (std::size_t i = 0; i < mc.length(); ++i) {
    value /= q_pochhammer(t, t, mc[i] - nc[i]);
    value /= q_pochhammer(t, t, nc[i] - mc[i + 1]);
  }
  return value;
}

Rational cancellation_sum(const Partition& lambda, const Partition& nu, const Rational& t) {
  require_open_unit(t, "cancellation_sum");
  Rational total(0);
  if (!contains(nu, lambda)) return total;
  const Partition nu_conj = nu.conjugate();
  for (const Partition& mu : sub_partitions(lambda)) {
    if (!contains(nu, mu)) continue;
    const Rational weight = qw_skew_Q_one(mu.conjugate(), nu_conj, -t, t);
    if (weight.is_zero()) continue;
    total += skew_P_principal(lambda, mu, t, t) * weight;
  }
  return total;
}

}  // namespace abelmoments::hl
