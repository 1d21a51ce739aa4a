#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "abelmoments/partition.hpp"
#include "abelmoments/rational.hpp"

// Desk-scale symmetric functions with Macdonald (q, t) structure, evaluated at
// rational parameter points. Everything is exact; sizes are bounded by a
// degree cap.

namespace abelmoments::mac {

inline constexpr int kDefaultDegreeCap = 8;

enum class Basis { monomial, powersum };

/// Finite linear combination of m_λ or p_λ with rational coefficients.
/// Zero coefficients are never stored.
class SymmetricFunction {
 public:
  using Terms = std::map<Partition, Rational, GradedOrder>;

  explicit SymmetricFunction(Basis basis = Basis::powersum) : basis_(basis) {}

  static SymmetricFunction one(Basis basis = Basis::powersum);
  static SymmetricFunction monomial(const Partition& lambda);
  static SymmetricFunction powersum(const Partition& lambda);

  Basis basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest degree among stored terms; 0 for the zero function.
  int degree() const;
  Rational coefficient(const Partition& lambda) const;

  void add_term(const Partition& lambda, const Rational& coefficient);

  SymmetricFunction& operator+=(const SymmetricFunction& rhs);
  SymmetricFunction& operator-=(const SymmetricFunction& rhs);
  SymmetricFunction& operator*=(const Rational& scalar);
  friend SymmetricFunction operator+(SymmetricFunction a, const SymmetricFunction& b) { return a += b; }
  friend SymmetricFunction operator-(SymmetricFunction a, const SymmetricFunction& b) { return a -= b; }
  friend SymmetricFunction operator*(SymmetricFunction a, const Rational& s) { return a *= s; }

  friend bool operator==(const SymmetricFunction&, const SymmetricFunction&) = default;

  std::string str() const;

 private:
  Basis basis_;
  Terms terms_;
};

/// Macdonald parameters; both must satisfy |q| < 1 and |t| < 1.
class MacdonaldParams {
 public:
  MacdonaldParams(Rational q, Rational t);
  const Rational& q() const { return q_; }
  const Rational& t() const { return t_; }
  MacdonaldParams swapped() const { return MacdonaldParams(t_, q_); }

 private:
  Rational q_;
  Rational t_;
};

/// Change of basis in the ring of symmetric functions. `num_vars` must be at
/// least the degree of f.
SymmetricFunction powersum_to_monomial(const SymmetricFunction& f, int num_vars);
SymmetricFunction monomial_to_powersum(const SymmetricFunction& f, int num_vars);

/// Basis-agnostic conversions (infinitely many variables).
SymmetricFunction to_powersum(const SymmetricFunction& f);
SymmetricFunction to_monomial(const SymmetricFunction& f);

/// z_λ(q, t) = ⟨p_λ, p_λ⟩_{q,t}.
Rational powersum_norm(const Partition& lambda, const MacdonaldParams& params);

Rational scalar_product(const SymmetricFunction& f, const SymmetricFunction& g, const MacdonaldParams& params);

/// P_λ(x; q, t) in the monomial basis, by Gram–Schmidt over the monomial
/// basis of degree |λ| in increasing lexicographic order. Results are cached
/// per (degree, q, t).
SymmetricFunction macdonald_P(const Partition& lambda, const MacdonaldParams& params,
                              int degree_cap = kDefaultDegreeCap);
/// Q_λ = P_λ / ⟨P_λ, P_λ⟩, monomial basis.
SymmetricFunction macdonald_Q(const Partition& lambda, const MacdonaldParams& params,
                              int degree_cap = kDefaultDegreeCap);

enum class SkewKind { P, Q };

/// P_{λ/μ} or Q_{λ/μ} in the power-sum basis, extracted from the coproduct
/// of P_λ (resp. Q_λ). Zero when μ ⊄ λ.
SymmetricFunction skew_function(SkewKind kind, const Partition& lambda, const Partition& mu,
                                const MacdonaldParams& params, int degree_cap = kDefaultDegreeCap);

/// A ring homomorphism Λ → Q, given by its values on the power sums p_k.
class Specialization {
 public:
  enum class Provenance { finite_alpha, geometric_alpha, geometric_beta, plancherel, general, sum };

  Specialization(std::function<Rational(int)> powersum_values, Provenance provenance, std::string description);

  /// Value assigned to p_k, k ≥ 1.
  Rational operator()(int k) const { return values_(k); }
  Provenance provenance() const { return provenance_; }
  const std::string& description() const { return description_; }

  /// f(θ, θ') := θ(f) + θ'(f) on power sums.
  friend Specialization operator+(const Specialization& a, const Specialization& b);

 private:
  std::function<Rational(int)> values_;
  Provenance provenance_;
  std::string description_;
};

/// p_1 ↦ Σα + (1-q)/(1-t)(τ + Σβ), p_k ↦ Σα^k + (-1)^{k-1}(1-q^k)/(1-t^k) Σβ^k.
Specialization make_specialization(const std::vector<Rational>& alphas, const std::vector<Rational>& betas,
                                   const Rational& tau, const MacdonaldParams& params);
/// Alpha parameters substituted for variables: p_k ↦ Σ c_i^k.
Specialization finite_alpha(const std::vector<Rational>& alphas);
/// α(u, u·ratio, u·ratio², …): p_k ↦ u^k / (1 - ratio^k).
Specialization geometric_alpha(const Rational& u, const Rational& ratio);
/// β(u, u·ratio, …): p_k ↦ (-1)^{k-1} (1-q^k)/(1-t^k) · u^k / (1 - ratio^k).
Specialization geometric_beta(const Rational& u, const Rational& ratio, const MacdonaldParams& params);

Rational specialize(const SymmetricFunction& f, const Specialization& spec);

/// Σ_{μ⊂ν⊂λ} P_{λ/ν}(α(u,ut,…);q,t) · Q_{ν'/μ'}(α(-u,-uq,…);t,q), with the
/// second factor computed as P_{ν/μ}(β(-u,-uq,…);q,t). Equals 1(λ = μ).
Rational specs_cancel_check(const Partition& lambda, const Partition& mu, const Rational& u,
                            const MacdonaldParams& params, int degree_cap = kDefaultDegreeCap);

struct DualitySides {
  Rational beta_side;   // P_{λ/μ}(β(c);q,t)
  Rational alpha_side;  // Q_{λ'/μ'}(c;t,q)
};

DualitySides beta_duality_sides(const Partition& lambda, const Partition& mu, const std::vector<Rational>& c,
                                const MacdonaldParams& params, int degree_cap = kDefaultDegreeCap);

/// True iff P_{λ/μ}(β(c);q,t) == Q_{λ'/μ'}(c;t,q) exactly.
bool beta_duality_check(const Partition& lambda, const Partition& mu, const std::vector<Rational>& c,
                        const MacdonaldParams& params, int degree_cap = kDefaultDegreeCap);

}  // namespace abelmoments::mac
