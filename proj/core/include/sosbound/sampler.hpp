#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sosbound/moments.hpp"
#include "sosbound/polynomial.hpp"

namespace sosbound {

/// Marginal densities of h* for the method of conditional distributions:
/// marginals[i] is f_{1..i+1}, a polynomial in x1..x_{i+1} (stored with the
/// full variable count), and marginals.back() is h* itself.
struct ConditionalChain {
  Domain domain;
  Polynomial density;
  std::vector<Polynomial> marginals;
};

/// Requires a box or simplex and a density integrating to one within 1e-6.
ConditionalChain build_chain(const Polynomial& density, const Domain& dom);

/// F(y) = sum_k coeffs[k] y^k on [lo, hi], with F(lo) = 0 and F(hi) = 1.
struct CumulativeFunction {
  std::vector<long double> coeffs;
  long double lo = 0;
  long double hi = 1;

  long double operator()(long double y) const;
  long double derivative(long double y) const;
  /// Univariate polynomial in x1 with coefficients rounded to rationals.
  Polynomial as_polynomial() const;
};

/// F_{i+1}(. | prefix) for the 0-based coordinate `i`; prefix holds x1..x_i.
/// Throws DegeneratePrefix when the conditional normalizer is below 1e-12.
CumulativeFunction conditional_cdf(const ConditionalChain& chain, std::size_t i,
                                   std::span<const double> prefix);

/// min{y : F(y) >= u} by bisection to width 1e-12 and one safeguarded Newton
/// step.
double invert_cdf(const CumulativeFunction& F, double u);

struct SampleBatch {
  std::vector<std::vector<double>> points;
  /// f at each point; empty when no objective was supplied.
  std::vector<double> values;
  std::uint64_t seed = 0;
};

/// Draws `count` points. Point k uses its own generator seeded from
/// (seed, k), so the batch does not depend on generation order.
SampleBatch sample(const ConditionalChain& chain, std::size_t count, std::uint64_t seed,
                   const std::optional<Polynomial>& f = std::nullopt);

/// Fraction of points with f(x) > bound + eps (bound - f_min).
double markov_check(const Polynomial& f, const SampleBatch& batch, double bound, double f_min,
                    double eps);

struct SampleSummary {
  double mean = 0.0;
  double variance = 0.0;
  double min = 0.0;
  /// Standard error of the mean.
  double stderr_mean = 0.0;
};

SampleSummary summarize(std::span<const double> values);

}  // namespace sosbound
