#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sosbound/moments.hpp"
#include "sosbound/polynomial.hpp"

namespace sosbound {

/// phi_{2r}(t) = sum_{k=0}^{2r} (-t)^k / k!, a univariate polynomial in x1.
Polynomial phi_coeffs(int r);

/// H_{r,a}(x) = prefactor * shape(x) with prefactor = (2 pi sigma^2)^{-n/2}
/// and shape = phi_{2r}(||x - a||^2 / (2 sigma^2)) exact in the rationals
/// nearest to a and 1/(2 sigma^2).
struct TaylorDensity {
  double prefactor = 1.0;
  Polynomial shape{1};

  double operator()(std::span<const double> x) const { return prefactor * shape.evaluate(x); }
};

TaylorDensity taylor_density(std::span<const double> a, double sigma, int r, std::size_t n);

/// Gaussian density (2 pi sigma^2)^{-n/2} exp(-||x - a||^2 / (2 sigma^2)).
double gaussian_density(std::span<const double> x, std::span<const double> a, double sigma);

struct MassEstimate {
  double value = 0.0;
  /// Zero for the closed-form box mass.
  double stderr_value = 0.0;
};

/// Integral over K of the Gaussian centred at a, i.e. 1 / C_{K,a}. Exact via
/// erfc on boxes; Monte Carlo with `samples` draws on the simplex and ball.
MassEstimate gaussian_mass(const Domain& dom, std::span<const double> a, double sigma,
                           std::size_t samples = 1000000, std::uint64_t seed = 20170125);

struct GeomParams {
  double D = 0.0;
  double w_min = 0.0;
  double eta = 0.0;
  double eps_K = 0.0;
  double r_K = 0.0;
  double gamma_n = 0.0;
};

GeomParams geom_params(const Domain& dom);

/// max{D e / (2 eps_K^3), n} when eps_K <= 1, else D e / 2.
double threshold_order(double D, double eps_K, std::size_t n);

/// Integral of t^n exp(-t^2/2) over t >= 0.
double p_constant(std::size_t n);

double zeta_constant(std::size_t n, double eta, double D);

/// Smallest distance between parallel supporting hyperplanes.
double minimal_width(const Domain& dom);

/// max |f| over a grid (n <= 3) or a fixed pseudo-random design (n > 3).
double sup_abs_estimate(const Polynomial& f, const Domain& dom);

/// 2 d^2 * 1.1 * sup|f| / w_min, an estimate of the Lipschitz constant bound.
double lipschitz_bound(const Polynomial& f, const Domain& dom);

enum class HoldStatus { holds, fails, precondition };

/// "true", "false" or "false-precondition".
std::string to_string(HoldStatus status);

struct CertificateOptions {
  std::size_t mc_samples = 1000000;
  std::uint64_t seed = 20170125;
  /// Moments above this degree are refused with InsufficientDegree.
  int max_moment_degree = 160;
};

struct CertificateReport {
  std::vector<double> a;
  int r = 0;
  std::size_t n = 0;
  double sigma = 0.0;
  double eps = 0.0;
  /// The formula value before capping at eps_K.
  double eps_formula = 0.0;
  bool eps_capped = false;
  double C_Ka = 0.0;
  double C_Ka_stderr = 0.0;
  double c_rKa = 0.0;
  double f_rKa = 0.0;
  double f_min = 0.0;
  double M_f = 0.0;
  double zeta = 0.0;
  double rhs = 0.0;
  GeomParams geom;
  HoldStatus holds = HoldStatus::precondition;
};

CertificateReport certificate(const Polynomial& f, const Domain& dom, std::span<const double> a,
                              int r, double f_min, const CertificateOptions& options = {});

}  // namespace sosbound
