#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sosbound/bound.hpp"
#include "sosbound/errors.hpp"
#include "sosbound/sampler.hpp"
#include "sosbound/testfns.hpp"

using namespace sosbound;

namespace {

Polynomial P(const char* text, std::size_t n) { return parse_polynomial(text, n); }

double mean_of(const std::vector<std::vector<double>>& points, std::size_t coord) {
  double s = 0.0;
  for (const auto& x : points) s += x[coord];
  return s / static_cast<double>(points.size());
}

}  // namespace

TEST(Chain, UniformBox) {
  const ConditionalChain c = build_chain(P("1", 2), Domain::cube(2, 0, 1));
  ASSERT_EQ(c.marginals.size(), 2u);
  EXPECT_EQ(c.marginals[0], P("1", 2));
  EXPECT_EQ(c.marginals[1], P("1", 2));
}

TEST(Chain, UniformSimplex) {
  const ConditionalChain c = build_chain(P("2", 2), Domain::simplex(2));
  EXPECT_EQ(c.marginals[0], P("2 - 2*x1", 2));
  EXPECT_EQ(c.marginals[1], P("2", 2));
}

TEST(Chain, SingleCoordinateIsTheDensity) {
  const ConditionalChain c = build_chain(P("3*x1^2", 1), Domain::cube(1, 0, 1));
  ASSERT_EQ(c.marginals.size(), 1u);
  EXPECT_EQ(c.marginals[0], P("3*x1^2", 1));
}

TEST(Chain, Errors) {
  EXPECT_THROW(build_chain(P("1", 2), Domain::ball(2)), UnsupportedDomain);
  EXPECT_THROW(build_chain(P("2", 2), Domain::cube(2, 0, 1)), InvalidArgument);
  EXPECT_THROW(build_chain(P("1", 1), Domain::cube(2, 0, 1)), DimensionError);
}

TEST(Chain, MarginalsIntegrateToOne) {
  const auto motzkin = testfns::get("motzkin");
  const BoundResult res = compute_bound(motzkin.polynomial(), motzkin.domain, 6);
  const ConditionalChain c = build_chain(res.density, motzkin.domain);
  EXPECT_NEAR(integrate_poly(Domain::cube(1, -2, 2),
                             parse_polynomial(to_string(c.marginals[0]), 1)),
              1.0, 1e-8);
  EXPECT_FALSE(c.marginals[0].depends_on(1));
  EXPECT_NEAR(integrate_poly(motzkin.domain, c.marginals[1]), 1.0, 1e-8);

  const auto matyas = testfns::get("matyas-modified-s");
  const BoundResult rs = compute_bound(matyas.polynomial(), matyas.domain, 5);
  const ConditionalChain cs = build_chain(rs.density, matyas.domain);
  EXPECT_NEAR(integrate_poly(Domain::cube(1, 0, 1), parse_polynomial(to_string(cs.marginals[0]), 1)),
              1.0, 1e-8);
  for (double x1 = 0.0; x1 <= 1.0; x1 += 0.01) {
    const double x[] = {x1, 0.0};
    EXPECT_GE(cs.marginals[0].evaluate(x), -1e-12);
  }
}

TEST(ConditionalCdf, UniformBoxSecondCoordinate) {
  const ConditionalChain c = build_chain(P("1", 2), Domain::cube(2, 0, 1));
  const double prefix[] = {0.3};
  const CumulativeFunction F = conditional_cdf(c, 1, prefix);
  EXPECT_EQ(F.lo, 0.0L);
  EXPECT_EQ(F.hi, 1.0L);
  for (double y : {0.0, 0.25, 0.6, 1.0}) EXPECT_NEAR(static_cast<double>(F(y)), y, 1e-15);
  EXPECT_EQ(F.as_polynomial(), P("x1", 1));
}

TEST(ConditionalCdf, Cubic) {
  const ConditionalChain c = build_chain(P("3*x1^2", 1), Domain::cube(1, 0, 1));
  const CumulativeFunction F = conditional_cdf(c, 0, {});
  EXPECT_EQ(F.as_polynomial(), P("x1^3", 1));
  EXPECT_NEAR(static_cast<double>(F.derivative(0.5L)), 0.75, 1e-15);
}

TEST(ConditionalCdf, UniformSimplexFirstCoordinate) {
  const ConditionalChain c = build_chain(P("2", 2), Domain::simplex(2));
  const CumulativeFunction F = conditional_cdf(c, 0, {});
  for (double y : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(static_cast<double>(F(y)), 1 - (1 - y) * (1 - y), 1e-15);
  }
  const double prefix[] = {0.4};
  const CumulativeFunction G = conditional_cdf(c, 1, prefix);
  EXPECT_NEAR(static_cast<double>(G.hi), 0.6, 1e-15);
  EXPECT_NEAR(static_cast<double>(G(0.3L)), 0.5, 1e-15);
}

TEST(ConditionalCdf, DegeneratePrefix) {
  // All mass of x1^2 x2^2 (suitably normalized) vanishes on the line x1 = 0.
  const ConditionalChain c = build_chain(P("9*x1^2*x2^2", 2), Domain::cube(2, 0, 1));
  const double prefix[] = {0.0};
  EXPECT_THROW(conditional_cdf(c, 1, prefix), DegeneratePrefix);
}

TEST(InvertCdf, Examples) {
  const CumulativeFunction cube{{0, 0, 0, 1}, 0, 1};
  EXPECT_NEAR(invert_cdf(cube, 0.125), 0.5, 1e-12);
  const CumulativeFunction line{{0, 1}, 0, 1};
  EXPECT_NEAR(invert_cdf(line, 0.7), 0.7, 1e-12);
  const CumulativeFunction tri{{0, 2, -1}, 0, 1};
  EXPECT_NEAR(invert_cdf(tri, 0.75), 0.5, 1e-12);
  EXPECT_EQ(invert_cdf(line, 0.0), 0.0);
  EXPECT_EQ(invert_cdf(line, 1.0), 1.0);
  EXPECT_THROW(invert_cdf(line, 1.5), InvalidArgument);
}

TEST(Sample, Determinism) {
  const ConditionalChain c = build_chain(P("2", 2), Domain::simplex(2));
  const SampleBatch a = sample(c, 1, 99);
  const SampleBatch b = sample(c, 1, 99);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.seed, 99u);
  const SampleBatch longer = sample(c, 5, 99);
  EXPECT_EQ(longer.points.front(), a.points.front());
  EXPECT_NE(sample(c, 1, 100).points, a.points);
}

TEST(Sample, UniformBoxMean) {
  const ConditionalChain c = build_chain(P("1", 2), Domain::cube(2, 0, 1));
  const SampleBatch batch = sample(c, 10000, 5);
  const double tol = 3 * (1 / std::sqrt(12.0)) / 100;
  EXPECT_NEAR(mean_of(batch.points, 0), 0.5, tol);
  EXPECT_NEAR(mean_of(batch.points, 1), 0.5, tol);
}

TEST(Sample, Membership) {
  for (const char* name : {"motzkin", "matyas-modified-s"}) {
    const auto tc = testfns::get(name);
    const BoundResult res = compute_bound(tc.polynomial(), tc.domain, 6);
    const SampleBatch batch = sample(build_chain(res.density, tc.domain), 2000, 3);
    for (const auto& x : batch.points) EXPECT_TRUE(tc.domain.contains(x, 1e-12)) << name;
  }
}

TEST(Sample, UnbiasedAgainstExactVariance) {
  for (const char* name : {"booth", "matyas-modified-s"}) {
    const auto tc = testfns::get(name);
    const Polynomial f = tc.polynomial();
    const BoundResult res = compute_bound(f, tc.domain, 4);
    const SampleBatch batch = sample(build_chain(res.density, tc.domain), 10000, 8, f);
    ASSERT_EQ(batch.values.size(), 10000u);
    const double second = integrate_poly(tc.domain, f * f * res.density);
    const double se = std::sqrt((second - res.value * res.value) / 10000.0);
    EXPECT_NEAR(summarize(batch.values).mean, res.value, 3 * se) << name;
  }
}

TEST(Sample, KolmogorovSmirnovOneDimension) {
  const Polynomial f = P("x1", 1);
  const Domain dom = Domain::cube(1, 0, 1);
  const BoundResult res = compute_bound(f, dom, 3);
  const ConditionalChain c = build_chain(res.density, dom);
  const CumulativeFunction F = conditional_cdf(c, 0, {});
  std::vector<double> xs;
  for (const auto& x : sample(c, 10000, 17).points) xs.push_back(x[0]);
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double fx = static_cast<double>(F(xs[k]));
    ks = std::max({ks, std::abs(fx - k / n), std::abs((k + 1) / n - fx)});
  }
  EXPECT_LT(ks, 1.628 / std::sqrt(n));
}

TEST(Markov, Examples) {
  const ConditionalChain c = build_chain(P("1", 1), Domain::cube(1, 0, 1));
  const SampleBatch batch = sample(c, 10000, 4);
  const double freq = markov_check(P("x1", 1), batch, 0.5, 0.0, 0.5);
  EXPECT_NEAR(freq, 0.25, 3 * std::sqrt(0.25 * 0.75 / 10000));
  EXPECT_LE(freq, 2.0 / 3.0);
  EXPECT_EQ(markov_check(P("4", 1), batch, 4.0, 4.0, 1.0), 0.0);
  EXPECT_THROW(markov_check(P("x1", 1), batch, 0.5, 0.0, 0.0), InvalidArgument);
}

TEST(Summary, SmallSample) {
  const std::vector<double> v{1.0, 2.0, 3.0, 6.0};
  const SampleSummary s = summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.variance, 14.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.min, 1.0);
  EXPECT_DOUBLE_EQ(s.stderr_mean, std::sqrt(14.0 / 3.0 / 4.0));
  EXPECT_THROW(summarize(std::vector<double>{}), InvalidArgument);
}
