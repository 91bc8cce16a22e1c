#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sosbound/moments.hpp"
#include "sosbound/multi_index.hpp"
#include "sosbound/polynomial.hpp"
#include "sosbound/rational.hpp"

namespace sosbound {

/// Dense square matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  explicit RationalMatrix(std::size_t n = 0) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  Eigen::MatrixXd to_double() const;

 private:
  std::size_t n_;
  std::vector<Rational> data_;
};

/// Writes one row per line with entries as exact "p/q" rationals.
void dump_matrix(std::ostream& os, const RationalMatrix& m);

/// A_{ab} = sum_d f_d m_{a+b+d}, B_{ab} = m_{a+b}, both over the basis N(n, r).
/// For the ball every entry carries the common factor pi^pi_power, which is
/// left out of A and B.
struct MomentMatrices {
  MonomialBasis basis;
  RationalMatrix A;
  RationalMatrix B;
  int pi_power = 0;
};

MomentMatrices assemble_AB(const Polynomial& f, const Domain& dom, int r);
/// Uses an existing moment table, which must reach degree 2r + deg f.
MomentMatrices assemble_AB(const Polynomial& f, const MomentTable& table, int r);

/// Smallest eigenvalue of A v = lambda B v with v^T B v = 1.
struct GeneralizedEigenpair {
  double lambda = 0.0;
  Eigen::VectorXd v;
  double cond_B = 1.0;
};

/// Double-precision reduction: Jacobi scaling, Cholesky of B, symmetric
/// eigensolve. Throws ConditioningError when B is not numerically positive
/// definite or its scaled condition estimate exceeds `cond_limit`.
GeneralizedEigenpair smallest_generalized_eigenpair(const Eigen::MatrixXd& A,
                                                    const Eigen::MatrixXd& B,
                                                    double cond_limit = 1e14);

enum class Precision {
  /// Extended up to kAutoExtendedMaxBasis basis elements, double beyond.
  automatic,
  /// Reduce the pencil in binary128 before the double eigensolve.
  extended,
  /// Everything in double.
  standard,
};

inline constexpr std::size_t kAutoExtendedMaxBasis = 600;

struct BoundOptions {
  Precision precision = Precision::automatic;
  /// Map a box to [-1,1]^n before assembling (the value is unchanged).
  bool rescale = false;
  /// Largest accepted condition estimate of the scaled B; 0 picks 1e30 for
  /// the extended path and 1e14 for the double path.
  double cond_limit = 0.0;
};

struct BoundResult {
  int r = 0;
  double value = 0.0;
  /// Coefficients over the graded-lex basis of N(n, r) with v^T B v = 1
  /// (of the rescaled problem when rescaling was requested).
  std::vector<double> eigvec;
  /// h* = (v^T b(x))^2, integrating to one over the domain.
  Polynomial density{1};
  double cond_B = 1.0;
  /// ||A v - value B v|| / ||B v||.
  double residual = 0.0;
};

BoundResult compute_bound(const Polynomial& f, const Domain& dom, int r,
                          const BoundOptions& options = {});

struct SweepResult {
  std::vector<BoundResult> results;
  /// Set when a conditioning failure stopped the sweep early.
  std::optional<std::string> warning;
  std::optional<int> failed_r;
};

/// compute_bound for r = 1..r_max over one shared moment table.
SweepResult bound_sweep(const Polynomial& f, const Domain& dom, int r_max,
                        const BoundOptions& options = {});

/// The affine image of f and a box under x = c + h .* y that sends the box to
/// [-1,1]^n; the returned scale is h and the shift is c.
struct RescaledProblem {
  Polynomial f;
  Domain domain;
  std::vector<Rational> scale;
  std::vector<Rational> shift;
};

RescaledProblem rescale_to_unit_box(const Polynomial& f, const Domain& box);

}  // namespace sosbound
