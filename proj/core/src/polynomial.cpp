#include "sosbound/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "sosbound/errors.hpp"

namespace sosbound {

Polynomial::Polynomial(std::size_t n_vars) : n_vars_(n_vars) {
  if (n_vars == 0) throw InvalidArgument("number of variables must be positive");
}

Polynomial::Polynomial(std::size_t n_vars, TermMap terms) : Polynomial(n_vars) {
  for (auto& [alpha, c] : terms) {
    if (alpha.size() != n_vars) throw DimensionError("term length does not match n_vars");
    c.canonicalize();
    if (c != 0) terms_.emplace(alpha, std::move(c));
  }
}

Polynomial Polynomial::constant(std::size_t n_vars, const Rational& c) {
  Polynomial p(n_vars);
  if (c != 0) p.terms_.emplace(MultiIndex(n_vars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t n_vars, std::size_t var) {
  if (var >= n_vars) throw DimensionError("variable index out of range");
  Polynomial p(n_vars);
  p.terms_.emplace(MultiIndex::unit(n_vars, var), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, const Rational& c) {
  Polynomial p(alpha.size());
  if (c != 0) p.terms_.emplace(alpha, c);
  return p;
}

int Polynomial::degree() const noexcept {
  // Graded order: the last term has the highest degree.
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

int Polynomial::degree_in(std::size_t var) const {
  if (var >= n_vars_) throw DimensionError("variable index out of range");
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha[var]);
  return d;
}

bool Polynomial::depends_on(std::size_t var) const { return degree_in(var) > 0; }

Rational Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

namespace {

template <typename Real>
Real evaluate_impl(const Polynomial& p, std::span<const Real> x) {
  if (x.size() != p.n_vars()) throw DimensionError("point dimension does not match n_vars");
  Real sum = 0;
  for (const auto& [alpha, c] : p.terms()) {
    Real term = static_cast<Real>(to_double(c));
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int k = 0; k < alpha[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

}  // namespace

double Polynomial::evaluate(std::span<const double> x) const { return evaluate_impl(*this, x); }

long double Polynomial::evaluate(std::span<const long double> x) const {
  return evaluate_impl(*this, x);
}

void Polynomial::check_same_dimension(const Polynomial& other) const {
  if (n_vars_ != other.n_vars_) {
    throw DimensionError("polynomials have different numbers of variables (" +
                         std::to_string(n_vars_) + " vs " + std::to_string(other.n_vars_) + ")");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out(n_vars_);
  for (const auto& [alpha, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), alpha, -c);
  return out;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  p.check_same_dimension(q);
  Polynomial out = p;
  for (const auto& [alpha, c] : q.terms_) {
    auto [it, inserted] = out.terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  p.check_same_dimension(q);
  Polynomial out(p.n_vars_);
  for (const auto& [a, ca] : p.terms_) {
    for (const auto& [b, cb] : q.terms_) {
      Rational prod = ca * cb;
      auto [it, inserted] = out.terms_.try_emplace(a + b, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  Polynomial out(p.n_vars_);
  if (c == 0) return out;
  for (const auto& [alpha, coef] : p.terms_) {
    out.terms_.emplace_hint(out.terms_.end(), alpha, c * coef);
  }
  return out;
}

Polynomial pow(const Polynomial& p, int k) {
  if (k < 0) throw InvalidArgument("polynomial exponent must be nonnegative");
  Polynomial out = Polynomial::constant(p.n_vars(), 1);
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest degree first reads more naturally.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [alpha, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    const bool unit = mag == 1;
    if (!unit || alpha.degree() == 0) {
      os << mag.get_num().get_str();
      if (mag.get_den() != 1) os << "/" << mag.get_den().get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (i + 1);
      if (alpha[i] > 1) os << "^" << alpha[i];
      wrote = true;
    }
  }
  return os.str();
}

namespace {

void require_same_dimension(const Polynomial& p, const Polynomial& q) {
  if (p.n_vars() != q.n_vars()) {
    throw DimensionError("polynomials have different numbers of variables (" +
                         std::to_string(p.n_vars()) + " vs " + std::to_string(q.n_vars()) + ")");
  }
}

}  // namespace

Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& value) {
  require_same_dimension(p, value);
  if (var >= p.n_vars()) throw DimensionError("variable index out of range");
  std::vector<Polynomial> powers{Polynomial::constant(p.n_vars(), 1)};
  Polynomial::TermMap acc;
  for (const auto& [alpha, c] : p.terms()) {
    const int k = alpha[var];
    while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * value);
    const MultiIndex rest = alpha.with(var, 0);
    for (const auto& [beta, cb] : powers[k].terms()) {
      Rational prod = c * cb;
      auto [it, inserted] = acc.try_emplace(rest + beta, prod);
      if (!inserted) it->second += prod;
    }
  }
  return Polynomial(p.n_vars(), std::move(acc));
}

Polynomial substitute_affine(const Polynomial& p, std::span<const Rational> scale,
                             std::span<const Rational> shift) {
  const std::size_t n = p.n_vars();
  if (scale.size() != n || shift.size() != n) {
    throw DimensionError("affine map length does not match n_vars");
  }
  for (const auto& s : scale) {
    if (s == 0) throw InvalidArgument("affine scale entries must be nonzero");
  }
  // Substitute one variable at a time; each substitution keeps other
  // variables untouched, so the composition is exact.
  Polynomial out = p;
  for (std::size_t i = 0; i < n; ++i) {
    if (scale[i] == 1 && shift[i] == 0) continue;
    Polynomial image = scale[i] * Polynomial::variable(n, i) + Polynomial::constant(n, shift[i]);
    out = substitute(out, i, image);
  }
  return out;
}

Polynomial definite_integrate(const Polynomial& p, std::size_t var, const Polynomial& lower,
                              const Polynomial& upper) {
  require_same_dimension(p, lower);
  require_same_dimension(p, upper);
  if (var >= p.n_vars()) throw DimensionError("variable index out of range");
  if (lower.depends_on(var) || upper.depends_on(var)) {
    throw InvalidArgument("integration bounds must not depend on the integration variable");
  }
  Polynomial::TermMap anti;
  for (const auto& [alpha, c] : p.terms()) {
    const int k = alpha[var];
    anti.emplace(alpha.with(var, k + 1), c / Rational(k + 1));
  }
  Polynomial antiderivative(p.n_vars(), std::move(anti));
  return substitute(antiderivative, var, upper) - substitute(antiderivative, var, lower);
}

std::vector<double> gradient_at(const Polynomial& p, std::span<const double> x) {
  if (x.size() != p.n_vars()) throw DimensionError("point dimension does not match n_vars");
  const std::size_t n = p.n_vars();
  std::vector<double> grad(n, 0.0);
  for (const auto& [alpha, c] : p.terms()) {
    const double coef = to_double(c);
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] == 0) continue;
      double term = coef * alpha[j];
      for (std::size_t i = 0; i < n; ++i) {
        const int e = i == j ? alpha[i] - 1 : alpha[i];
        for (int k = 0; k < e; ++k) term *= x[i];
      }
      grad[j] += term;
    }
  }
  return grad;
}

double gradient_norm_samples(const Polynomial& p, const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw InvalidArgument("gradient_norm_samples needs at least one point");
  double best = 0.0;
  for (const auto& x : points) {
    double sq = 0.0;
    for (double g : gradient_at(p, x)) sq += g * g;
    best = std::max(best, std::sqrt(sq));
  }
  return best;
}

}  // namespace sosbound
