#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sosbound/multi_index.hpp"
#include "sosbound/rational.hpp"

namespace sosbound {

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in graded-lex order and zero coefficients are never stored,
/// so two polynomials are equal exactly when their term maps are equal. All
/// operations return new values; a Polynomial is never mutated after it is
/// handed out, which makes sharing across threads safe.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, Rational, GradedLexLess>;

  /// The zero polynomial in `n_vars` variables.
  explicit Polynomial(std::size_t n_vars);
  Polynomial(std::size_t n_vars, TermMap terms);

  static Polynomial constant(std::size_t n_vars, const Rational& c);
  /// x_{var+1}; `var` is 0-based.
  static Polynomial variable(std::size_t n_vars, std::size_t var);
  static Polynomial monomial(const MultiIndex& alpha, const Rational& c = 1);

  std::size_t n_vars() const noexcept { return n_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Maximum total degree of a term; 0 for the zero polynomial.
  int degree() const noexcept;
  /// Highest power of `var` appearing in any term.
  int degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;
  Rational coefficient(const MultiIndex& alpha) const;

  double evaluate(std::span<const double> x) const;
  long double evaluate(std::span<const long double> x) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial& p, const Polynomial& q) = default;

 private:
  void check_same_dimension(const Polynomial& other) const;

  std::size_t n_vars_;
  TermMap terms_;
};

/// p^k by repeated multiplication; p^0 = 1.
Polynomial pow(const Polynomial& p, int k);

/// Parses the ASCII grammar
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' uint)?
///   base   := number | 'x' uint | '(' expr ')'
/// Division is only permitted by a nonzero constant. Decimal literals are read
/// exactly (1.05 -> 21/20). Variables are x1..x<n_vars>.
Polynomial parse_polynomial(std::string_view text, std::size_t n_vars);

/// Text form accepted back by parse_polynomial.
std::string to_string(const Polynomial& p);

/// q(y) = p(scale .* y + shift), computed exactly.
Polynomial substitute_affine(const Polynomial& p, std::span<const Rational> scale,
                             std::span<const Rational> shift);

/// Replaces x_var by the polynomial `value` (which must not involve x_var
/// unless the caller wants composition semantics).
Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& value);

/// Integral of p over x_var from `lower` to `upper`; the bounds must not
/// involve x_var. The result does not involve x_var.
Polynomial definite_integrate(const Polynomial& p, std::size_t var, const Polynomial& lower,
                              const Polynomial& upper);

/// Gradient of p evaluated at x, from the exact symbolic partial derivatives.
std::vector<double> gradient_at(const Polynomial& p, std::span<const double> x);

/// max over `points` of ||grad p(x)||. A lower estimate of the Lipschitz
/// constant on any set containing the points.
double gradient_norm_samples(const Polynomial& p, const std::vector<std::vector<double>>& points);

}  // namespace sosbound
