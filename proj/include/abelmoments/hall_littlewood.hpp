#pragma once

#include "abelmoments/partition.hpp"
#include "abelmoments/rational.hpp"

// Closed-form evaluations of Hall-Littlewood (q = 0) and q-Whittaker (t = 0)
// functions at the specializations that encode abelian p-group counts.
// Throughout, t plays the role of 1/p (or 1/q₀ for a residue field of size q₀).

namespace abelmoments::hl {

/// Hall-Littlewood parameter t, checked to lie in (0, 1).
class HLParams {
 public:
  explicit HLParams(Rational t);
  /// t = 1 / residue_cardinality; residue_cardinality must be ≥ 2.
  static HLParams from_residue_cardinality(long residue_cardinality);
  const Rational& t() const { return t_; }

 private:
  Rational t_;
};

/// P_λ(u, ut, ut², …; 0, t) = u^{|λ|} t^{n(λ)} / ∏_i (t;t)_{m_i(λ)}.
Rational principal_P(const Partition& lambda, const Rational& u, const Rational& t);
/// Q_λ(u, ut, ut², …; 0, t) = u^{|λ|} t^{n(λ)}.
Rational principal_Q(const Partition& lambda, const Rational& u, const Rational& t);

/// P_{λ/μ}(1,t,…;0,t) / P_λ(1,t,…;0,t), evaluated over the first d = μ_1
/// columns. Zero when μ ⊄ λ.
Rational skew_ratio(const Partition& lambda, const Partition& mu, const Rational& t);
/// Same product taken over the first `columns` columns (columns ≥ μ_1).
Rational skew_ratio(const Partition& lambda, const Partition& mu, const Rational& t, int columns);

/// P_{λ/μ}(u, ut, …; 0, t), via homogeneity of degree |λ| - |μ|.
Rational skew_P_principal(const Partition& lambda, const Partition& mu, const Rational& u,
                          const Rational& t);

/// One-variable q-Whittaker skew functions P_{λ/μ}(x; q, 0) and
/// Q_{λ/μ}(x; q, 0). Both vanish unless μ ≺ λ.
Rational qw_skew_P_one(const Partition& lambda, const Partition& mu, const Rational& x,
                       const Rational& q);
Rational qw_skew_Q_one(const Partition& lambda, const Partition& mu, const Rational& x,
                       const Rational& q);

/// #Sur(G_λ, G_μ) from the Hall-Littlewood formula at t = 1/residue_cardinality.
/// Throws InternalError if the rational expression is not a nonnegative integer.
BigInt surjection_count(const Partition& lambda, const Partition& mu, long residue_cardinality);

/// Coefficient of M_{G_μ} in the expansion of Pr(G ≅ G_ν), with p^{-1} → t.
/// Zero unless μ' ≻ ν'.
Rational inversion_coefficient(const Partition& nu, const Partition& mu, const Rational& t);

/// Σ_{ν ⊂ μ ⊂ λ} P_{λ/μ}(t,t²,…;0,t) Q_{μ'/ν'}(-t; t, 0). Equals 1(λ = ν).
Rational cancellation_sum(const Partition& lambda, const Partition& nu, const Rational& t);

/// Raised when a closed form that must be integral is not (an implementation bug).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace abelmoments::hl
