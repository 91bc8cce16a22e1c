#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sosbound/multi_index.hpp"
#include "sosbound/polynomial.hpp"
#include "sosbound/rational.hpp"

namespace sosbound {

enum class DomainKind { box, simplex, ball };

std::string to_string(DomainKind kind);

/// An axis-aligned box, the standard simplex {x >= 0, sum x <= 1}, or the
/// closed unit ball centred at the origin.
class Domain {
 public:
  using Interval = std::pair<Rational, Rational>;

  static Domain box(std::vector<Interval> bounds);
  /// [lo, hi]^n.
  static Domain cube(std::size_t n, const Rational& lo, const Rational& hi);
  static Domain simplex(std::size_t n);
  static Domain ball(std::size_t n);

  DomainKind kind() const noexcept { return kind_; }
  std::size_t n() const noexcept { return n_; }
  /// Box bounds; empty for the simplex and the ball.
  const std::vector<Interval>& bounds() const noexcept { return bounds_; }

  /// Lebesgue volume, equal to the zeroth moment.
  double volume() const;
  /// Squared Euclidean diameter.
  double squared_diameter() const;
  /// Membership with tolerance `slack` on every defining inequality.
  bool contains(std::span<const double> x, double slack = 1e-12) const;
  /// Stable textual key, e.g. "box[-10,10;-10,10]" or "simplex2".
  std::string key() const;

  friend bool operator==(const Domain& a, const Domain& b) = default;

 private:
  Domain(DomainKind kind, std::size_t n, std::vector<Interval> bounds)
      : kind_(kind), n_(n), bounds_(std::move(bounds)) {}

  DomainKind kind_;
  std::size_t n_;
  std::vector<Interval> bounds_;
};

/// m = coef * pi^pi_power. Only ball moments carry a power of pi.
struct Moment {
  Rational coef;
  int pi_power = 0;

  double value() const;
};

/// m_alpha(K) = integral over K of x^alpha.
Moment moment(const Domain& dom, const MultiIndex& alpha);

/// Every moment with |alpha| <= max_degree, stored flat in graded-lex rank
/// order. All entries share one power of pi.
class MomentTable {
 public:
  MomentTable(const Domain& dom, int max_degree);

  const Domain& domain() const noexcept { return dom_; }
  int max_degree() const noexcept { return ranker_.max_degree(); }
  std::size_t size() const noexcept { return coefs_.size(); }
  int pi_power() const noexcept { return pi_power_; }
  const MonomialRanker& ranker() const noexcept { return ranker_; }

  /// Rational part of m_alpha; throws InsufficientDegree past max_degree.
  const Rational& coef(const MultiIndex& alpha) const;
  const Rational& coef_at(std::size_t rank) const { return coefs_[rank]; }
  Moment at(const MultiIndex& alpha) const { return {coef(alpha), pi_power_}; }

 private:
  Domain dom_;
  MonomialRanker ranker_;
  int pi_power_;
  std::vector<Rational> coefs_;
};

/// Shared, memoized table keyed on (domain, max_degree). Thread-safe.
std::shared_ptr<const MomentTable> moment_table(const Domain& dom, int max_degree);

/// Drops every memoized table.
void clear_moment_cache();

/// Exact integral of p over the domain.
Moment integrate_poly_exact(const Domain& dom, const Polynomial& p);
/// Same, using an existing table.
Moment integrate_poly_exact(const MomentTable& table, const Polynomial& p);

double integrate_poly(const Domain& dom, const Polynomial& p);

}  // namespace sosbound
