#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "sosbound/bound.hpp"
#include "sosbound/errors.hpp"
#include "sosbound/testfns.hpp"

using namespace sosbound;

namespace {

Polynomial P(const char* text, std::size_t n) { return parse_polynomial(text, n); }

Rational R(int p, int q = 1) { return testgen::ratio(p, q); }

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Assemble, LinearOnUnitInterval) {
  const MomentMatrices m = assemble_AB(P("x1", 1), Domain::cube(1, 0, 1), 1);
  ASSERT_EQ(m.A.size(), 2u);
  EXPECT_EQ(m.A(0, 0), R(1, 2));
  EXPECT_EQ(m.A(0, 1), R(1, 3));
  EXPECT_EQ(m.A(1, 0), R(1, 3));
  EXPECT_EQ(m.A(1, 1), R(1, 4));
  EXPECT_EQ(m.B(0, 0), 1);
  EXPECT_EQ(m.B(0, 1), R(1, 2));
  EXPECT_EQ(m.B(1, 1), R(1, 3));
  EXPECT_EQ(m.pi_power, 0);
}

TEST(Assemble, ConstantOneGivesEqualMatrices) {
  for (const Domain& dom : {Domain::cube(2, -3, 1), Domain::simplex(2), Domain::ball(2)}) {
    const MomentMatrices m = assemble_AB(P("1", 2), dom, 3);
    for (std::size_t i = 0; i < m.A.size(); ++i) {
      for (std::size_t j = 0; j < m.A.size(); ++j) EXPECT_EQ(m.A(i, j), m.B(i, j));
    }
  }
}

TEST(Assemble, BasisSize) {
  EXPECT_EQ(MonomialBasis(2, 12).size(), 91u);
  EXPECT_EQ(assemble_AB(P("x1*x2", 2), Domain::simplex(2), 12).A.size(), 91u);
}

TEST(Assemble, BallCarriesCommonPiPower) {
  EXPECT_EQ(assemble_AB(P("x1", 3), Domain::ball(3), 2).pi_power, 1);
  EXPECT_EQ(assemble_AB(P("x1", 4), Domain::ball(4), 1).pi_power, 2);
}

TEST(Eigen, ClosedFormTwoByTwo) {
  const MomentMatrices m = assemble_AB(P("x1", 1), Domain::cube(1, 0, 1), 1);
  const GeneralizedEigenpair e = smallest_generalized_eigenpair(m.A.to_double(), m.B.to_double());
  EXPECT_NEAR(e.lambda, (3 - std::sqrt(3.0)) / 6, 1e-12);
  EXPECT_NEAR(e.v.dot(m.B.to_double() * e.v), 1.0, 1e-12);
}

TEST(Eigen, EqualMatrices) {
  Eigen::MatrixXd b(2, 2);
  b << 2, 1, 1, 3;
  const GeneralizedEigenpair e = smallest_generalized_eigenpair(b, b);
  EXPECT_NEAR(e.lambda, 1.0, 1e-14);
  EXPECT_NEAR(e.v.dot(b * e.v), 1.0, 1e-14);
}

TEST(Eigen, DiagonalPencil) {
  const Eigen::MatrixXd a = Eigen::Vector2d(2, 5).asDiagonal();
  const GeneralizedEigenpair e =
      smallest_generalized_eigenpair(a, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_DOUBLE_EQ(e.lambda, 2.0);
  EXPECT_NEAR(e.v(0), 1.0, 1e-15);
  EXPECT_NEAR(e.v(1), 0.0, 1e-15);
}

TEST(Eigen, TieBreakPrefersFirstCoordinate) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  const GeneralizedEigenpair e = smallest_generalized_eigenpair(id, id);
  EXPECT_NEAR(e.v(0), 1.0, 1e-12);
  EXPECT_NEAR(e.v(1), 0.0, 1e-12);
  EXPECT_NEAR(e.v(2), 0.0, 1e-12);
}

TEST(Eigen, IndefiniteBIsRejected) {
  Eigen::MatrixXd b(2, 2);
  b << 1, 2, 2, 1;
  EXPECT_THROW(smallest_generalized_eigenpair(Eigen::MatrixXd::Identity(2, 2), b),
               ConditioningError);
}

TEST(ComputeBound, ClosedFormBothPrecisions) {
  const double expect = (3 - std::sqrt(3.0)) / 6;
  for (Precision p : {Precision::extended, Precision::standard}) {
    const BoundResult res = compute_bound(P("x1", 1), Domain::cube(1, 0, 1), 1, {.precision = p});
    EXPECT_NEAR(res.value, expect, 1e-12);
  }
  EXPECT_NEAR(compute_bound(P("x1", 1), Domain::cube(1, 0, 1), 0).value, 0.5, 1e-15);
  EXPECT_THROW(compute_bound(P("x1", 1), Domain::cube(1, 0, 1), -1), InvalidArgument);
}

TEST(ComputeBound, ConstantObjective) {
  for (const Domain& dom : {Domain::cube(2, -10, 10), Domain::simplex(2), Domain::ball(2)}) {
    for (int r : {1, 3, 5}) {
      EXPECT_NEAR(compute_bound(P("5", 2), dom, r).value, 5.0, 1e-10) << dom.key() << " r=" << r;
    }
  }
}

TEST(ComputeBound, ReferenceValues) {
  const auto motzkin = testfns::get("motzkin");
  EXPECT_NEAR(compute_bound(motzkin.polynomial(), motzkin.domain, 12).value, 0.406076, 1e-6);
  const auto booth = testfns::get("booth");
  EXPECT_NEAR(compute_bound(booth.polynomial(), booth.domain, 1).value, 244.680, 1e-3);
  const auto matyas_b = testfns::get("matyas-modified-b");
  EXPECT_NEAR(compute_bound(matyas_b.polynomial(), matyas_b.domain, 2).value, 6.3995, 1e-3);
}

TEST(ComputeBound, DimensionMismatch) {
  EXPECT_THROW(compute_bound(P("x1", 1), Domain::simplex(2), 1), DimensionError);
}

TEST(ComputeBound, ConditioningLimitIsEnforced) {
  const auto camel = testfns::get("three-hump-camel");
  try {
    compute_bound(camel.polynomial(), camel.domain, 6, {.cond_limit = 10.0});
    FAIL() << "expected ConditioningError";
  } catch (const ConditioningError& e) {
    EXPECT_GT(e.cond_b(), 10.0);
  }
}

TEST(Sweep, ThreeHumpCamel) {
  const auto camel = testfns::get("three-hump-camel");
  const SweepResult sweep = bound_sweep(camel.polynomial(), camel.domain, 6);
  const double expect[] = {265.774, 29.0005, 29.0005, 9.58064, 9.58064, 4.43983};
  ASSERT_EQ(sweep.results.size(), 6u);
  EXPECT_FALSE(sweep.warning);
  for (int r = 1; r <= 6; ++r) {
    EXPECT_EQ(sweep.results[r - 1].r, r);
    EXPECT_NEAR(sweep.results[r - 1].value, expect[r - 1], 1e-3) << "r=" << r;
  }
}

TEST(Sweep, ConstantSequence) {
  const SweepResult sweep = bound_sweep(P("-2", 3), Domain::simplex(3), 4);
  for (const auto& res : sweep.results) EXPECT_NEAR(res.value, -2.0, 1e-10);
}

TEST(Sweep, StopsAtConditioningFailure) {
  const auto camel = testfns::get("three-hump-camel");
  const SweepResult sweep = bound_sweep(camel.polynomial(), camel.domain, 6, {.cond_limit = 100.0});
  ASSERT_TRUE(sweep.failed_r.has_value());
  EXPECT_TRUE(sweep.warning.has_value());
  EXPECT_EQ(sweep.results.size(), static_cast<std::size_t>(*sweep.failed_r - 1));
}

TEST(BoundProperties, MonotoneAndAboveMinimum) {
  for (const std::string& name : testfns::list()) {
    if (testfns::is_parametric(name)) continue;
    const auto tc = testfns::get(name);
    const SweepResult sweep = bound_sweep(tc.polynomial(), tc.domain, 6);
    ASSERT_EQ(sweep.results.size(), 6u) << name;
    for (std::size_t k = 0; k < sweep.results.size(); ++k) {
      const double v = sweep.results[k].value;
      EXPECT_GE(v, tc.f_min - 1e-6) << name;
      if (k > 0) {
        const double prev = sweep.results[k - 1].value;
        EXPECT_LE(v, prev + 1e-7 * (1 + std::abs(prev))) << name << " r=" << k + 1;
      }
    }
  }
}

TEST(BoundProperties, VariationalLowerBound) {
  const auto tc = testfns::get("matyas");
  const MomentMatrices m = assemble_AB(tc.polynomial(), tc.domain, 4);
  const Eigen::MatrixXd a = m.A.to_double();
  const Eigen::MatrixXd b = m.B.to_double();
  const double lambda = compute_bound(tc.polynomial(), tc.domain, 4).value;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd w(a.rows());
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = g(rng);
    w /= std::sqrt(w.dot(b * w));
    EXPECT_GE(w.dot(a * w), lambda - 1e-9 * (1 + std::abs(lambda)));
  }
}

TEST(BoundProperties, DensityInvariants) {
  std::mt19937_64 rng(22);
  for (const std::string& name : {"booth", "motzkin", "matyas-modified-s", "three-hump-camel-modified-b"}) {
    const auto tc = testfns::get(name);
    const Polynomial f = tc.polynomial();
    const BoundResult res = compute_bound(f, tc.domain, 5);
    EXPECT_LE(res.density.degree(), 10);
    EXPECT_NEAR(integrate_poly(tc.domain, res.density), 1.0, 1e-8) << name;
    EXPECT_LE(relative_gap(integrate_poly(tc.domain, f * res.density), res.value), 1e-7) << name;
    for (int k = 0; k < 100; ++k) {
      const auto x = testgen::random_point(rng, 2, -2.0, 2.0);
      EXPECT_GE(res.density.evaluate(x), 0.0);
    }
    EXPECT_EQ(res.eigvec.size(), MonomialBasis(2, 5).size());
    EXPECT_LT(res.residual, 1e-8);
  }
}

TEST(BoundProperties, AffineInvariance) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> small(-6, 6);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const Polynomial f = testgen::random_polynomial(rng, n, 4, 5);
    std::vector<Domain::Interval> bounds;
    for (std::size_t i = 0; i < n; ++i) {
      const int lo = small(rng);
      bounds.emplace_back(R(lo), R(lo + 1 + std::abs(small(rng))));
    }
    const Domain box = Domain::box(bounds);
    std::vector<Rational> scale(n), shift(n);
    std::vector<Domain::Interval> pre;
    for (std::size_t i = 0; i < n; ++i) {
      int s = 0;
      while (s == 0) s = small(rng);
      scale[i] = R(s, 4);
      shift[i] = R(small(rng), 3);
      Rational lo = (bounds[i].first - shift[i]) / scale[i];
      Rational hi = (bounds[i].second - shift[i]) / scale[i];
      if (lo > hi) std::swap(lo, hi);
      pre.emplace_back(lo, hi);
    }
    const Polynomial g = substitute_affine(f, scale, shift);
    for (int r : {1, 3}) {
      const double direct = compute_bound(f, box, r).value;
      const double mapped = compute_bound(g, Domain::box(pre), r).value;
      EXPECT_LE(relative_gap(mapped, direct), 1e-6) << to_string(f) << " r=" << r;
    }
  }
}

TEST(Rescale, UnitBoxImage) {
  const auto booth = testfns::get("booth");
  const RescaledProblem rp = rescale_to_unit_box(booth.polynomial(), booth.domain);
  EXPECT_EQ(rp.domain, Domain::cube(2, -1, 1));
  EXPECT_EQ(rp.scale[0], 10);
  EXPECT_EQ(rp.shift[0], 0);
  EXPECT_THROW(rescale_to_unit_box(booth.polynomial(), Domain::simplex(2)), UnsupportedDomain);
}

TEST(Rescale, ValueUnchangedAndDensityMapsBack) {
  const auto camel = testfns::get("three-hump-camel");
  const Polynomial f = camel.polynomial();
  for (int r : {2, 6}) {
    const BoundResult plain = compute_bound(f, camel.domain, r);
    const BoundResult scaled = compute_bound(f, camel.domain, r, {.rescale = true});
    EXPECT_LE(relative_gap(scaled.value, plain.value), 1e-6);
    EXPECT_NEAR(integrate_poly(camel.domain, scaled.density), 1.0, 1e-8);
    EXPECT_LE(relative_gap(integrate_poly(camel.domain, f * scaled.density), plain.value), 1e-7);
  }
}
