#include "abelmoments/macdonald.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace abelmoments::mac {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Bases of one degree, indexed in `partitions_of(d)` order (lex descending).
struct DegreeTables {
  std::vector<Partition> partitions;
  std::map<Partition, std::size_t> index;
  Matrix p_in_m;  // p_λ = Σ_μ p_in_m[λ][μ] m_μ
  Matrix m_in_p;  // m_μ = Σ_λ m_in_p[μ][λ] p_λ
};

// Coefficient of x^μ in ∏_i p_{λ_i}(x): ways to drop each part of λ into a
// bin so that bin j sums to μ_j.
long count_fillings(const std::vector<int>& parts, std::size_t next, std::vector<int>& room) {
  if (next == parts.size()) {
    return std::all_of(room.begin(), room.end(), [](int r) { return r == 0; }) ? 1 : 0;
  }
  long total = 0;
  for (int& r : room) {
    if (r >= parts[next]) {
      r -= parts[next];
      total += count_fillings(parts, next + 1, room);
      r += parts[next];
    }
  }
  return total;
}

Matrix invert(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix work = a;
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw Error("singular basis transition matrix");
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = Rational(1) / work[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      work[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || work[row][col].is_zero()) continue;
      const Rational factor = work[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        work[row][j] -= factor * work[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

std::shared_ptr<const DegreeTables> build_tables(int degree) {
  auto tables = std::make_shared<DegreeTables>();
  tables->partitions = partitions_of(degree);
  const std::size_t n = tables->partitions.size();
  for (std::size_t i = 0; i < n; ++i) tables->index.emplace(tables->partitions[i], i);
  tables->p_in_m.assign(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> room = tables->partitions[j].parts();
      tables->p_in_m[i][j] = Rational(count_fillings(tables->partitions[i].parts(), 0, room));
    }
  }
  tables->m_in_p = invert(tables->p_in_m);
  return tables;
}

const DegreeTables& tables_for(int degree) {
  static std::shared_mutex mutex;
  static std::unordered_map<int, std::shared_ptr<const DegreeTables>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(degree); it != cache.end()) return *it->second;
  }
  auto built = build_tables(degree);
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(degree, std::move(built));
  return *it->second;
}

// Orthogonal basis {P_λ : |λ| = d} in power-sum coordinates, with norms.
struct GramSchmidtResult {
  Matrix p_coords;
  std::vector<Rational> norms;
};

std::string cache_key(int degree, const MacdonaldParams& params) {
  return std::to_string(degree) + "|" + params.q().str() + "|" + params.t().str();
}

std::shared_ptr<const GramSchmidtResult> run_gram_schmidt(int degree, const MacdonaldParams& params) {
  const DegreeTables& tables = tables_for(degree);
  const std::size_t n = tables.partitions.size();
  std::vector<Rational> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = powersum_norm(tables.partitions[i], params);
  auto inner = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational total(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!a[i].is_zero() && !b[i].is_zero()) total += a[i] * b[i] * weights[i];
    }
    return total;
  };

  auto result = std::make_shared<GramSchmidtResult>();
  result->p_coords.assign(n, {});
  result->norms.assign(n, Rational(0));
  // Index n-1 is the lexicographically smallest partition (1^d).
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t target = n - 1 - step;
    std::vector<Rational> v = tables.m_in_p[target];
    for (std::size_t prev = target + 1; prev < n; ++prev) {
      const Rational overlap = inner(tables.m_in_p[target], result->p_coords[prev]);
      if (overlap.is_zero()) continue;
      const Rational factor = overlap / result->norms[prev];
      for (std::size_t i = 0; i < n; ++i) v[i] -= factor * result->p_coords[prev][i];
    }
    Rational norm = inner(v, v);
    if (norm.is_zero()) {
      throw DomainError("degenerate Gram matrix at " + tables.partitions[target].str() + " for (q,t) = (" +
                        params.q().str() + "," + params.t().str() + ")");
    }
    result->p_coords[target] = std::move(v);
    result->norms[target] = std::move(norm);
  }
  return result;
}

const GramSchmidtResult& gram_schmidt(int degree, const MacdonaldParams& params) {
  static std::shared_mutex mutex;
  static std::unordered_map<std::string, std::shared_ptr<const GramSchmidtResult>> cache;
  const std::string key = cache_key(degree, params);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto built = run_gram_schmidt(degree, params);
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(built));
  return *it->second;
}

void check_cap(const Partition& lambda, int degree_cap) {
  if (lambda.size() > degree_cap) {
    throw DomainError("partition " + lambda.str() + " exceeds the degree cap " + std::to_string(degree_cap));
  }
}

SymmetricFunction from_p_coords(int degree, const std::vector<Rational>& coords) {
  const DegreeTables& tables = tables_for(degree);
  SymmetricFunction f(Basis::powersum);
  for (std::size_t i = 0; i < coords.size(); ++i) f.add_term(tables.partitions[i], coords[i]);
  return f;
}

// P_λ (or Q_λ) power-sum coordinates plus the ⟨P_λ,P_λ⟩ norm.
std::pair<std::vector<Rational>, Rational> basis_element(const Partition& lambda, const MacdonaldParams& params) {
  const int degree = lambda.size();
  const GramSchmidtResult& gs = gram_schmidt(degree, params);
  const std::size_t idx = tables_for(degree).index.at(lambda);
  return {gs.p_coords[idx], gs.norms[idx]};
}

// Expands a multiset of parts into all (x-part, y-part, multiplicity) splits.
void split_parts(const std::vector<std::pair<int, int>>& groups, std::size_t next, std::vector<int>& left,
                 std::vector<int>& right, long weight,
                 const std::function<void(const Partition&, const Partition&, long)>& emit) {
  if (next == groups.size()) {
    std::vector<int> l = left;
    std::vector<int> r = right;
    std::sort(l.rbegin(), l.rend());
    std::sort(r.rbegin(), r.rend());
    emit(Partition(l), Partition(r), weight);
    return;
  }
  const auto [part, mult] = groups[next];
  long binom = 1;
  for (int k = 0; k <= mult; ++k) {
    if (k > 0) binom = binom * (mult - k + 1) / k;
    for (int i = 0; i < k; ++i) left.push_back(part);
    for (int i = k; i < mult; ++i) right.push_back(part);
    split_parts(groups, next + 1, left, right, weight * binom, emit);
    left.resize(left.size() - static_cast<std::size_t>(k));
    right.resize(right.size() - static_cast<std::size_t>(mult - k));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

SymmetricFunction SymmetricFunction::one(Basis basis) {
  SymmetricFunction f(basis);
  f.add_term(Partition{}, Rational(1));
  return f;
}

SymmetricFunction SymmetricFunction::monomial(const Partition& lambda) {
  SymmetricFunction f(Basis::monomial);
  f.add_term(lambda, Rational(1));
  return f;
}

SymmetricFunction SymmetricFunction::powersum(const Partition& lambda) {
  SymmetricFunction f(Basis::powersum);
  f.add_term(lambda, Rational(1));
  return f;
}

int SymmetricFunction::degree() const {
  int d = 0;
  for (const auto& [lambda, c] : terms_) d = std::max(d, lambda.size());
  return d;
}

Rational SymmetricFunction::coefficient(const Partition& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SymmetricFunction::add_term(const Partition& lambda, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.emplace(lambda, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SymmetricFunction& SymmetricFunction::operator+=(const SymmetricFunction& rhs) {
  if (rhs.basis_ != basis_) throw DomainError("adding symmetric functions in different bases");
  for (const auto& [lambda, c] : rhs.terms_) add_term(lambda, c);
  return *this;
}

SymmetricFunction& SymmetricFunction::operator-=(const SymmetricFunction& rhs) {
  if (rhs.basis_ != basis_) throw DomainError("subtracting symmetric functions in different bases");
  for (const auto& [lambda, c] : rhs.terms_) add_term(lambda, -c);
  return *this;
}

SymmetricFunction& SymmetricFunction::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [lambda, c] : terms_) c *= scalar;
  return *this;
}

std::string SymmetricFunction::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  const char* symbol = basis_ == Basis::monomial ? "m" : "p";
  bool first = true;
  for (const auto& [lambda, c] : terms_) {
    os << (first ? "" : " + ") << c << "*" << symbol << lambda;
    first = false;
  }
  return os.str();
}

MacdonaldParams::MacdonaldParams(Rational q, Rational t) : q_(std::move(q)), t_(std::move(t)) {
  if (q_.abs() >= Rational(1) || t_.abs() >= Rational(1)) {
    throw DomainError("Macdonald parameters need |q| < 1 and |t| < 1, got (" + q_.str() + "," + t_.str() + ")");
  }
}

SymmetricFunction to_powersum(const SymmetricFunction& f) {
  if (f.basis() == Basis::powersum) return f;
  SymmetricFunction out(Basis::powersum);
  for (const auto& [mu, c] : f.terms()) {
    const DegreeTables& tables = tables_for(mu.size());
    const auto& row = tables.m_in_p[tables.index.at(mu)];
    for (std::size_t j = 0; j < row.size(); ++j) out.add_term(tables.partitions[j], c * row[j]);
  }
  return out;
}

SymmetricFunction to_monomial(const SymmetricFunction& f) {
  if (f.basis() == Basis::monomial) return f;
  SymmetricFunction out(Basis::monomial);
  for (const auto& [lambda, c] : f.terms()) {
    const DegreeTables& tables = tables_for(lambda.size());
    const auto& row = tables.p_in_m[tables.index.at(lambda)];
    for (std::size_t j = 0; j < row.size(); ++j) out.add_term(tables.partitions[j], c * row[j]);
  }
  return out;
}

namespace {
void check_vars(const SymmetricFunction& f, int num_vars) {
  if (num_vars < 1 || num_vars < f.degree()) {
    throw DomainError("basis change needs at least " + std::to_string(f.degree()) + " variables, got " +
                      std::to_string(num_vars));
  }
}
}  // namespace

SymmetricFunction powersum_to_monomial(const SymmetricFunction& f, int num_vars) {
  check_vars(f, num_vars);
  return to_monomial(f);
}

SymmetricFunction monomial_to_powersum(const SymmetricFunction& f, int num_vars) {
  check_vars(f, num_vars);
  return to_powersum(f);
}

Rational powersum_norm(const Partition& lambda, const MacdonaldParams& params) {
  Rational value(1);
  for (int part : lambda.parts()) {
    value *= (Rational(1) - params.q().pow(part)) / (Rational(1) - params.t().pow(part));
  }
  const Partition conj = lambda.conjugate();
  for (int i = 1; i <= lambda[0]; ++i) {
    const int m = conj[static_cast<std::size_t>(i - 1)] - conj[static_cast<std::size_t>(i)];
    for (int k = 1; k <= m; ++k) value *= Rational(static_cast<long>(i) * k);
  }
  return value;
}

Rational scalar_product(const SymmetricFunction& f, const SymmetricFunction& g, const MacdonaldParams& params) {
  const SymmetricFunction fp = to_powersum(f);
  const SymmetricFunction gp = to_powersum(g);
  Rational total(0);
  for (const auto& [lambda, c] : fp.terms()) {
    const Rational other = gp.coefficient(lambda);
    if (!other.is_zero()) total += c * other * powersum_norm(lambda, params);
  }
  return total;
}

SymmetricFunction macdonald_P(const Partition& lambda, const MacdonaldParams& params, int degree_cap) {
  check_cap(lambda, degree_cap);
  return to_monomial(from_p_coords(lambda.size(), basis_element(lambda, params).first));
}

SymmetricFunction macdonald_Q(const Partition& lambda, const MacdonaldParams& params, int degree_cap) {
  check_cap(lambda, degree_cap);
  auto [coords, norm] = basis_element(lambda, params);
  return to_monomial(from_p_coords(lambda.size(), coords) * (Rational(1) / norm));
}

SymmetricFunction skew_function(SkewKind kind, const Partition& lambda, const Partition& mu,
                                const MacdonaldParams& params, int degree_cap) {
  check_cap(lambda, degree_cap);
  SymmetricFunction out(Basis::powersum);
  if (!contains(mu, lambda)) return out;

  auto [outer, outer_norm] = basis_element(lambda, params);
  if (kind == SkewKind::Q) {
    for (auto& c : outer) c /= outer_norm;
  }
  auto [inner, inner_norm] = basis_element(mu, params);
  const DegreeTables& outer_tables = tables_for(lambda.size());
  const DegreeTables& inner_tables = tables_for(mu.size());
  const int inner_degree = mu.size();

  // Coefficient of P_μ (for kind P) in p_α is ⟨p_α, Q_μ⟩; of Q_μ (kind Q) it is ⟨p_α, P_μ⟩.
  auto extract = [&](const Partition& alpha) {
    const Rational value = inner[inner_tables.index.at(alpha)] * powersum_norm(alpha, params);
    return kind == SkewKind::P ? value / inner_norm : value;
  };

  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (outer[i].is_zero()) continue;
    const Partition& rho = outer_tables.partitions[i];
    std::vector<std::pair<int, int>> groups;
    for (int part : rho.parts()) {
      if (groups.empty() || groups.back().first != part) groups.emplace_back(part, 0);
      ++groups.back().second;
    }
    std::vector<int> left;
    std::vector<int> right;
    split_parts(groups, 0, left, right, 1, [&](const Partition& x_part, const Partition& y_part, long ways) {
      if (x_part.size() != inner_degree) return;
      const Rational coeff = extract(x_part);
      if (!coeff.is_zero()) out.add_term(y_part, outer[i] * coeff * Rational(ways));
    });
  }
  return out;
}

// ---------------------------------------------------------------------------

Specialization::Specialization(std::function<Rational(int)> powersum_values, Provenance provenance,
                               std::string description)
    : values_(std::move(powersum_values)), provenance_(provenance), description_(std::move(description)) {}

Specialization operator+(const Specialization& a, const Specialization& b) {
  return Specialization([a, b](int k) { return a(k) + b(k); }, Specialization::Provenance::sum,
                        a.description() + " + " + b.description());
}

Specialization make_specialization(const std::vector<Rational>& alphas, const std::vector<Rational>& betas,
                                   const Rational& tau, const MacdonaldParams& params) {
  auto values = [alphas, betas, tau, params](int k) {
    Rational alpha_sum(0);
    for (const auto& a : alphas) alpha_sum += a.pow(k);
    Rational beta_sum(0);
    for (const auto& b : betas) beta_sum += b.pow(k);
    if (k == 1) beta_sum += tau;
    Rational factor = (Rational(1) - params.q().pow(k)) / (Rational(1) - params.t().pow(k));
    if (k % 2 == 0) factor = -factor;
    return alpha_sum + factor * beta_sum;
  };
  auto provenance = Specialization::Provenance::general;
  if (betas.empty() && tau.is_zero()) provenance = Specialization::Provenance::finite_alpha;
  if (alphas.empty() && betas.empty()) provenance = Specialization::Provenance::plancherel;
  return Specialization(values, provenance,
                        "alpha(" + std::to_string(alphas.size()) + "),beta(" + std::to_string(betas.size()) +
                            "),tau=" + tau.str());
}

Specialization finite_alpha(const std::vector<Rational>& alphas) {
  return Specialization(
      [alphas](int k) {
        Rational sum(0);
        for (const auto& a : alphas) sum += a.pow(k);
        return sum;
      },
      Specialization::Provenance::finite_alpha, "alpha(" + std::to_string(alphas.size()) + ")");
}

Specialization geometric_alpha(const Rational& u, const Rational& ratio) {
  if (ratio.abs() >= Rational(1)) throw DomainError("geometric alphabet needs |ratio| < 1, got " + ratio.str());
  return Specialization([u, ratio](int k) { return u.pow(k) / (Rational(1) - ratio.pow(k)); },
                        Specialization::Provenance::geometric_alpha,
                        "alpha(" + u.str() + "," + u.str() + "*" + ratio.str() + ",...)");
}

Specialization geometric_beta(const Rational& u, const Rational& ratio, const MacdonaldParams& params) {
  if (ratio.abs() >= Rational(1)) throw DomainError("geometric alphabet needs |ratio| < 1, got " + ratio.str());
  return Specialization(
      [u, ratio, params](int k) {
        Rational value = (Rational(1) - params.q().pow(k)) / (Rational(1) - params.t().pow(k)) * u.pow(k) /
                         (Rational(1) - ratio.pow(k));
        return k % 2 == 0 ? -value : value;
      },
      Specialization::Provenance::geometric_beta, "beta(" + u.str() + "," + u.str() + "*" + ratio.str() + ",...)");
}

Rational specialize(const SymmetricFunction& f, const Specialization& spec) {
  const SymmetricFunction fp = to_powersum(f);
  std::map<int, Rational> memo;
  auto value_of = [&](int k) -> const Rational& {
    auto it = memo.find(k);
    if (it == memo.end()) it = memo.emplace(k, spec(k)).first;
    return it->second;
  };
  Rational total(0);
  for (const auto& [rho, c] : fp.terms()) {
    Rational term = c;
    for (int part : rho.parts()) term *= value_of(part);
    total += term;
  }
  return total;
}

Rational specs_cancel_check(const Partition& lambda, const Partition& mu, const Rational& u,
                            const MacdonaldParams& params, int degree_cap) {
  check_cap(lambda, degree_cap);
  Rational total(0);
  if (!contains(mu, lambda)) return total;
  const Specialization alpha = geometric_alpha(u, params.t());
  const Specialization beta = geometric_beta(-u, params.q(), params);
  for (const Partition& nu : sub_partitions(lambda)) {
    if (!contains(mu, nu)) continue;
    const Rational first = specialize(skew_function(SkewKind::P, lambda, nu, params, degree_cap), alpha);
    if (first.is_zero()) continue;
    total += first * specialize(skew_function(SkewKind::P, nu, mu, params, degree_cap), beta);
  }
  return total;
}

DualitySides beta_duality_sides(const Partition& lambda, const Partition& mu, const std::vector<Rational>& c,
                                const MacdonaldParams& params, int degree_cap) {
  check_cap(lambda, degree_cap);
  DualitySides sides;
  sides.beta_side = specialize(skew_function(SkewKind::P, lambda, mu, params, degree_cap),
                               make_specialization({}, c, Rational(0), params));
  sides.alpha_side = specialize(
      skew_function(SkewKind::Q, lambda.conjugate(), mu.conjugate(), params.swapped(), degree_cap), finite_alpha(c));
  return sides;
}

bool beta_duality_check(const Partition& lambda, const Partition& mu, const std::vector<Rational>& c,
                        const MacdonaldParams& params, int degree_cap) {
  const DualitySides sides = beta_duality_sides(lambda, mu, c, params, degree_cap);
  return sides.beta_side == sides.alpha_side;
}

}  // namespace abelmoments::mac
