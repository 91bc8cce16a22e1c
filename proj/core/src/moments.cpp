#include "sosbound/moments.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "sosbound/errors.hpp"

namespace sosbound {

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::box:
      return "box";
    case DomainKind::simplex:
      return "simplex";
    case DomainKind::ball:
      return "ball";
  }
  return "unknown";
}

Domain Domain::box(std::vector<Interval> bounds) {
  if (bounds.empty()) throw InvalidArgument("box needs at least one coordinate interval");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    bounds[i].first.canonicalize();
    bounds[i].second.canonicalize();
    if (!(bounds[i].first < bounds[i].second)) {
      throw InvalidArgument("box interval " + std::to_string(i + 1) + " must satisfy lo < hi");
    }
  }
  const std::size_t n = bounds.size();
  return Domain(DomainKind::box, n, std::move(bounds));
}

Domain Domain::cube(std::size_t n, const Rational& lo, const Rational& hi) {
  if (n == 0) throw InvalidArgument("dimension must be positive");
  return box(std::vector<Interval>(n, {lo, hi}));
}

Domain Domain::simplex(std::size_t n) {
  if (n == 0) throw InvalidArgument("dimension must be positive");
  return Domain(DomainKind::simplex, n, {});
}

Domain Domain::ball(std::size_t n) {
  if (n == 0) throw InvalidArgument("dimension must be positive");
  return Domain(DomainKind::ball, n, {});
}

double Domain::volume() const { return moment(*this, MultiIndex(n_)).value(); }

double Domain::squared_diameter() const {
  switch (kind_) {
    case DomainKind::box: {
      double d = 0.0;
      for (const auto& [lo, hi] : bounds_) {
        const double w = to_double(hi - lo);
        d += w * w;
      }
      return d;
    }
    case DomainKind::simplex:
      return n_ == 1 ? 1.0 : 2.0;
    case DomainKind::ball:
      return 4.0;
  }
  return 0.0;
}

bool Domain::contains(std::span<const double> x, double slack) const {
  if (x.size() != n_) throw DimensionError("point dimension does not match domain");
  switch (kind_) {
    case DomainKind::box:
      for (std::size_t i = 0; i < n_; ++i) {
        if (x[i] < to_double(bounds_[i].first) - slack) return false;
        if (x[i] > to_double(bounds_[i].second) + slack) return false;
      }
      return true;
    case DomainKind::simplex: {
      double sum = 0.0;
      for (double xi : x) {
        if (xi < -slack) return false;
        sum += xi;
      }
      return sum <= 1.0 + slack;
    }
    case DomainKind::ball: {
      double sq = 0.0;
      for (double xi : x) sq += xi * xi;
      return std::sqrt(sq) <= 1.0 + slack;
    }
  }
  return false;
}

std::string Domain::key() const {
  if (kind_ != DomainKind::box) return to_string(kind_) + std::to_string(n_);
  std::string out = "box[";
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (i > 0) out += ';';
    out += to_string(bounds_[i].first) + ',' + to_string(bounds_[i].second);
  }
  return out + ']';
}

double Moment::value() const {
  return to_double(coef) * std::pow(std::numbers::pi, pi_power);
}

namespace {

int ball_pi_power(std::size_t n) { return static_cast<int>(n / 2); }

Rational box_moment_1d(const Domain::Interval& iv, int a) {
  return (pow(iv.second, a + 1) - pow(iv.first, a + 1)) / Rational(a + 1);
}

// Rational part of the ball moment, Gamma form:
//   pi^{n/2} prod (a_i - 1)!! / (Gamma(1 + k/2) 2^{|a|/2}),  k = n + |a|.
Rational ball_coef(std::size_t n, std::span<const int> alpha, int degree) {
  Rational prod = 1;
  for (int a : alpha) {
    if (a % 2 != 0) return 0;
    prod *= double_factorial(a - 1);
  }
  const int k = static_cast<int>(n) + degree;
  if (n % 2 == 0) {
    return prod / (factorial(static_cast<unsigned>(k / 2)) * pow(Rational(2), degree / 2));
  }
  // Gamma(1 + k/2) = k!! sqrt(pi) / 2^{(k+1)/2} for odd k.
  return prod * pow(Rational(2), static_cast<int>(n + 1) / 2) / double_factorial(k);
}

Rational simplex_coef(std::size_t n, std::span<const int> alpha, int degree) {
  Rational num = 1;
  for (int a : alpha) num *= factorial(static_cast<unsigned>(a));
  return num / factorial(static_cast<unsigned>(degree) + static_cast<unsigned>(n));
}

}  // namespace

Moment moment(const Domain& dom, const MultiIndex& alpha) {
  if (alpha.size() != dom.n()) throw DimensionError("multi-index length does not match domain");
  switch (dom.kind()) {
    case DomainKind::box: {
      Rational m = 1;
      for (std::size_t i = 0; i < dom.n(); ++i) m *= box_moment_1d(dom.bounds()[i], alpha[i]);
      return {m, 0};
    }
    case DomainKind::simplex:
      return {simplex_coef(dom.n(), alpha.exponents(), alpha.degree()), 0};
    case DomainKind::ball:
      return {ball_coef(dom.n(), alpha.exponents(), alpha.degree()), ball_pi_power(dom.n())};
  }
  return {};
}

MomentTable::MomentTable(const Domain& dom, int max_degree)
    : dom_(dom),
      ranker_(dom.n(), max_degree),
      pi_power_(dom.kind() == DomainKind::ball ? ball_pi_power(dom.n()) : 0) {
  if (max_degree < 0) throw InvalidArgument("max_degree must be nonnegative");
  const std::size_t n = dom.n();
  coefs_.resize(ranker_.size());

  std::vector<std::vector<Rational>> per_axis;
  std::vector<Rational> fact;
  if (dom.kind() == DomainKind::box) {
    per_axis.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (int a = 0; a <= max_degree; ++a) per_axis[i].push_back(box_moment_1d(dom.bounds()[i], a));
    }
  } else if (dom.kind() == DomainKind::simplex) {
    fact.push_back(1);
    for (int k = 1; k <= max_degree + static_cast<int>(n); ++k) fact.push_back(fact.back() * k);
  }

  for (const MultiIndex& alpha : enumerate_multi_indices(n, max_degree)) {
    Rational m = 1;
    switch (dom.kind()) {
      case DomainKind::box:
        for (std::size_t i = 0; i < n; ++i) m *= per_axis[i][alpha[i]];
        break;
      case DomainKind::simplex:
        for (std::size_t i = 0; i < n; ++i) m *= fact[alpha[i]];
        m /= fact[alpha.degree() + n];
        break;
      case DomainKind::ball:
        m = ball_coef(n, alpha.exponents(), alpha.degree());
        break;
    }
    coefs_[ranker_.rank(alpha)] = std::move(m);
  }
}

const Rational& MomentTable::coef(const MultiIndex& alpha) const {
  if (alpha.size() != dom_.n()) throw DimensionError("multi-index length does not match domain");
  if (alpha.degree() > ranker_.max_degree()) {
    throw InsufficientDegree("moment of degree " + std::to_string(alpha.degree()) +
                             " requested from a table of degree " +
                             std::to_string(ranker_.max_degree()));
  }
  return coefs_[ranker_.rank(alpha)];
}

namespace {

struct MomentCache {
  std::mutex mutex;
  std::map<std::pair<std::string, int>, std::shared_ptr<const MomentTable>> tables;
};

MomentCache& cache() {
  static MomentCache instance;
  return instance;
}

}  // namespace

std::shared_ptr<const MomentTable> moment_table(const Domain& dom, int max_degree) {
  if (max_degree < 0) throw InvalidArgument("max_degree must be nonnegative");
  auto key = std::make_pair(dom.key(), max_degree);
  auto& c = cache();
  {
    std::lock_guard lock(c.mutex);
    if (auto it = c.tables.find(key); it != c.tables.end()) return it->second;
  }
  // Built outside the lock; a concurrent fill of the same key yields an
  // identical table and the first insertion wins.
  auto table = std::make_shared<const MomentTable>(dom, max_degree);
  std::lock_guard lock(c.mutex);
  return c.tables.try_emplace(std::move(key), std::move(table)).first->second;
}

void clear_moment_cache() {
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  c.tables.clear();
}

Moment integrate_poly_exact(const Domain& dom, const Polynomial& p) {
  if (p.n_vars() != dom.n()) throw DimensionError("polynomial dimension does not match domain");
  Moment total{0, dom.kind() == DomainKind::ball ? ball_pi_power(dom.n()) : 0};
  for (const auto& [alpha, c] : p.terms()) total.coef += c * moment(dom, alpha).coef;
  return total;
}

Moment integrate_poly_exact(const MomentTable& table, const Polynomial& p) {
  if (p.n_vars() != table.domain().n()) {
    throw DimensionError("polynomial dimension does not match domain");
  }
  Moment total{0, table.pi_power()};
  for (const auto& [alpha, c] : p.terms()) total.coef += c * table.coef(alpha);
  return total;
}

double integrate_poly(const Domain& dom, const Polynomial& p) {
  return integrate_poly_exact(dom, p).value();
}

}  // namespace sosbound
