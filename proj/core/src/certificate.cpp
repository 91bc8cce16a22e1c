#include "sosbound/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sosbound/errors.hpp"

namespace sosbound {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;
constexpr double kSupSafety = 1.1;
constexpr int kGridPerAxis = 101;
constexpr std::size_t kDesignPoints = 100000;

}  // namespace

Polynomial phi_coeffs(int r) {
  if (r < 0) throw InvalidArgument("order r must be nonnegative");
  Polynomial::TermMap terms;
  Rational fact = 1;
  for (int k = 0; k <= 2 * r; ++k) {
    if (k > 0) fact *= k;
    terms.emplace(MultiIndex{k}, Rational(k % 2 == 0 ? 1 : -1) / fact);
  }
  return Polynomial(1, std::move(terms));
}

TaylorDensity taylor_density(std::span<const double> a, double sigma, int r, std::size_t n) {
  if (!(sigma > 0)) throw InvalidArgument("sigma must be positive");
  if (r < 0) throw InvalidArgument("order r must be nonnegative");
  if (a.size() != n) throw DimensionError("centre dimension does not match n");
  const Rational s = rational_from_double(1.0 / (2.0 * sigma * sigma));
  Polynomial dist2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Polynomial d =
        Polynomial::variable(n, i) - Polynomial::constant(n, rational_from_double(a[i]));
    dist2 = dist2 + d * d;
  }
  const Polynomial t = s * dist2;
  // Horner in t over the coefficients of phi_{2r}.
  const Polynomial phi = phi_coeffs(r);
  Polynomial shape(n);
  for (int k = 2 * r; k >= 0; --k) {
    shape = shape * t + Polynomial::constant(n, phi.coefficient(MultiIndex{k}));
  }
  const double prefactor = std::pow(2.0 * kPi * sigma * sigma, -0.5 * static_cast<double>(n));
  return {prefactor, std::move(shape)};
}

double gaussian_density(std::span<const double> x, std::span<const double> a, double sigma) {
  if (x.size() != a.size()) throw DimensionError("point and centre dimensions differ");
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - a[i]) * (x[i] - a[i]);
  return std::pow(2.0 * kPi * sigma * sigma, -0.5 * static_cast<double>(x.size())) *
         std::exp(-d2 / (2.0 * sigma * sigma));
}

MassEstimate gaussian_mass(const Domain& dom, std::span<const double> a, double sigma,
                           std::size_t samples, std::uint64_t seed) {
  if (!(sigma > 0)) throw InvalidArgument("sigma must be positive");
  if (a.size() != dom.n()) throw DimensionError("centre dimension does not match domain");
  if (dom.kind() == DomainKind::box) {
    double mass = 1.0;
    const double scale = sigma * std::numbers::sqrt2;
    for (std::size_t i = 0; i < dom.n(); ++i) {
      const double lo = (to_double(dom.bounds()[i].first) - a[i]) / scale;
      const double hi = (to_double(dom.bounds()[i].second) - a[i]) / scale;
      mass *= 0.5 * (std::erfc(lo) - std::erfc(hi));
    }
    return {mass, 0.0};
  }
  if (samples == 0) throw InvalidArgument("Monte Carlo sample count must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> x(dom.n());
  std::size_t inside = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = a[i] + normal(rng);
    if (dom.contains(x, 0.0)) ++inside;
  }
  const double p = static_cast<double>(inside) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

double threshold_order(double D, double eps_K, std::size_t n) {
  if (eps_K <= 1.0) return std::max(D * kE / (2.0 * eps_K * eps_K * eps_K), static_cast<double>(n));
  return D * kE / 2.0;
}

double minimal_width(const Domain& dom) {
  switch (dom.kind()) {
    case DomainKind::box: {
      double w = std::numeric_limits<double>::infinity();
      for (const auto& [lo, hi] : dom.bounds()) w = std::min(w, to_double(hi - lo));
      return w;
    }
    case DomainKind::simplex:
      // Attained in the direction (1,...,1): the facet sum x = 1 against the
      // opposite vertex 0.
      return 1.0 / std::sqrt(static_cast<double>(dom.n()));
    case DomainKind::ball:
      return 2.0;
  }
  return 0.0;
}

GeomParams geom_params(const Domain& dom) {
  const std::size_t n = dom.n();
  const double nd = static_cast<double>(n);
  GeomParams g;
  g.D = dom.squared_diameter();
  g.w_min = minimal_width(dom);
  g.gamma_n = std::pow(kPi, nd / 2.0) / std::tgamma(1.0 + nd / 2.0);
  switch (dom.kind()) {
    case DomainKind::box: {
      const double root = std::sqrt(16.0 * nd - 1.0);
      g.eta = std::pow(root / (8.0 * nd + root), nd);
      g.eps_K = g.w_min / 2.0;
      break;
    }
    case DomainKind::simplex: {
      const double m = nd + std::sqrt(nd);
      const double root = std::sqrt(8.0 * m * m - 1.0);
      g.eta = std::pow(root / (4.0 * m * m + root), nd);
      g.eps_K = 1.0 / m;
      break;
    }
    case DomainKind::ball: {
      const double root = std::sqrt(3.0);
      g.eta = std::pow(root / (2.0 + root), nd);
      g.eps_K = 1.0;
      break;
    }
  }
  g.r_K = threshold_order(g.D, g.eps_K, n);
  return g;
}

double p_constant(std::size_t n) {
  if (n == 0) throw InvalidArgument("p(n) needs n >= 1");
  if (n % 2 == 0) {
    return std::sqrt(kPi / 2.0) * to_double(double_factorial(static_cast<int>(n) - 1));
  }
  const unsigned k = static_cast<unsigned>(n / 2);
  return std::ldexp(to_double(factorial(k)), static_cast<int>(k));
}

double zeta_constant(std::size_t n, double eta, double D) {
  if (!(eta > 0) || !(D > 0)) throw InvalidArgument("eta and D must be positive");
  const double nd = static_cast<double>(n);
  const double sqrt_e = std::sqrt(kE);
  const double mu1 = 1.0 + nd * p_constant(n) * sqrt_e / eta;
  const double mu2 = nd * sqrt_e * std::pow(D, (nd + 1.0) / 2.0) / eta;
  return 6.0 * nd * (mu1 * std::max(1.0, std::sqrt(D * kE / 2.0)) + mu2 / std::sqrt(2.0 * kPi));
}

namespace {

std::vector<std::vector<double>> design_points(const Domain& dom) {
  const std::size_t n = dom.n();
  std::vector<std::vector<double>> pts;
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dom.kind() == DomainKind::box) {
      lo[i] = to_double(dom.bounds()[i].first);
      hi[i] = to_double(dom.bounds()[i].second);
    } else {
      lo[i] = dom.kind() == DomainKind::simplex ? 0.0 : -1.0;
      hi[i] = 1.0;
    }
  }

  if (n <= 3) {
    std::vector<int> idx(n, 0);
    std::vector<double> x(n);
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = lo[i] + (hi[i] - lo[i]) * idx[i] / (kGridPerAxis - 1);
      }
      if (dom.contains(x, 1e-12)) pts.push_back(x);
      std::size_t i = 0;
      while (i < n && ++idx[i] == kGridPerAxis) idx[i++] = 0;
      if (i == n) break;
    }
    if (dom.kind() == DomainKind::ball) {
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        pts.push_back(e);
        e[i] = -1.0;
        pts.push_back(e);
      }
    }
    return pts;
  }

  std::mt19937_64 rng(0x5eedULL + n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  pts.assign(kDesignPoints, std::vector<double>(n));
  switch (dom.kind()) {
    case DomainKind::box: {
      // Latin hypercube: each axis visits every stratum once.
      std::vector<std::size_t> perm(kDesignPoints);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t k = 0; k < kDesignPoints; ++k) {
          const double u = (static_cast<double>(perm[k]) + unif(rng)) / kDesignPoints;
          pts[k][i] = lo[i] + (hi[i] - lo[i]) * u;
        }
      }
      if (n <= 12) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
          std::vector<double> c(n);
          for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i) & 1U ? hi[i] : lo[i];
          pts.push_back(std::move(c));
        }
      }
      break;
    }
    case DomainKind::simplex: {
      std::exponential_distribution<double> expo(1.0);
      for (auto& p : pts) {
        double total = expo(rng);
        for (double& v : p) total += (v = expo(rng));
        for (double& v : p) v /= total;
      }
      pts.emplace_back(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        pts.push_back(std::move(e));
      }
      break;
    }
    case DomainKind::ball: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& p : pts) {
        double norm2 = 0.0;
        for (double& v : p) {
          v = normal(rng);
          norm2 += v * v;
        }
        const double radius = std::pow(unif(rng), 1.0 / static_cast<double>(n));
        for (double& v : p) v *= radius / std::sqrt(norm2);
      }
      break;
    }
  }
  return pts;
}

}  // namespace

double sup_abs_estimate(const Polynomial& f, const Domain& dom) {
  if (f.n_vars() != dom.n()) throw DimensionError("polynomial dimension does not match domain");
  double best = 0.0;
  for (const auto& x : design_points(dom)) best = std::max(best, std::abs(f.evaluate(x)));
  return best;
}

double lipschitz_bound(const Polynomial& f, const Domain& dom) {
  const int d = f.degree();
  if (d == 0) return 0.0;
  return 2.0 * d * d * kSupSafety * sup_abs_estimate(f, dom) / minimal_width(dom);
}

std::string to_string(HoldStatus status) {
  switch (status) {
    case HoldStatus::holds:
      return "true";
    case HoldStatus::fails:
      return "false";
    case HoldStatus::precondition:
      return "false-precondition";
  }
  return "false";
}

CertificateReport certificate(const Polynomial& f, const Domain& dom, std::span<const double> a,
                              int r, double f_min, const CertificateOptions& options) {
  const std::size_t n = dom.n();
  if (f.n_vars() != n) throw DimensionError("polynomial dimension does not match domain");
  if (a.size() != n) throw DimensionError("point a has the wrong dimension");
  if (!dom.contains(a, 1e-12)) throw InvalidArgument("point a lies outside the domain");
  if (r < 1) throw InvalidArgument("certificate order r must be at least 1");
  const int degree = 4 * r + f.degree();
  if (degree > options.max_moment_degree) {
    throw InsufficientDegree("certificate at r=" + std::to_string(r) + " needs moments of degree " +
                             std::to_string(degree) + " but the limit is " +
                             std::to_string(options.max_moment_degree));
  }

  CertificateReport rep;
  rep.a.assign(a.begin(), a.end());
  rep.r = r;
  rep.n = n;
  rep.f_min = f_min;
  rep.geom = geom_params(dom);
  const double nd = static_cast<double>(n);
  const double m = 2.0 * r + 1.0;
  rep.eps_formula = std::pow(rep.geom.D * kE / (2.0 * m), m / (2.0 * m + nd));
  rep.eps_capped = rep.eps_formula > rep.geom.eps_K;
  rep.eps = rep.eps_capped ? rep.geom.eps_K : rep.eps_formula;
  rep.sigma = rep.eps;

  const TaylorDensity h = taylor_density(a, rep.sigma, r, n);
  const auto table = moment_table(dom, degree);
  const Moment shape_mass = integrate_poly_exact(*table, h.shape);
  const Moment f_shape = integrate_poly_exact(*table, f * h.shape);
  if (shape_mass.coef <= 0) throw InvalidArgument("truncated density has no mass on the domain");
  rep.c_rKa = 1.0 / (h.prefactor * shape_mass.value());
  rep.f_rKa = to_double(Rational(f_shape.coef / shape_mass.coef));

  const MassEstimate mass = gaussian_mass(dom, a, rep.sigma, options.mc_samples, options.seed);
  rep.C_Ka = 1.0 / mass.value;
  rep.C_Ka_stderr = mass.stderr_value / (mass.value * mass.value);

  rep.M_f = lipschitz_bound(f, dom);
  rep.zeta = zeta_constant(n, rep.geom.eta, rep.geom.D);
  rep.rhs = rep.zeta * rep.M_f / std::sqrt(m);
  if (rep.eps_capped || r < rep.geom.r_K / 2.0) {
    rep.holds = HoldStatus::precondition;
  } else {
    rep.holds = rep.f_rKa - f_min <= rep.rhs ? HoldStatus::holds : HoldStatus::fails;
  }
  return rep;
}

}  // namespace sosbound
