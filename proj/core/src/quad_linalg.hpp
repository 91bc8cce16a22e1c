#pragma once

// Dense linear algebra in IEEE binary128 (__float128). Only the operations
// needed by the generalized eigenvalue reduction are provided; arithmetic uses
// the compiler runtime, so no quadmath library is required.

#include <cstddef>
#include <vector>

#include "sosbound/rational.hpp"

namespace sosbound::detail {

using quad = __float128;

quad to_quad(const Rational& q);
/// Exact conversion of a finite binary128 value.
Rational to_rational(quad x);
quad quad_sqrt(quad x);
quad quad_abs(quad x);
quad quad_ldexp(quad x, int e);

/// Row-major square matrix.
class QuadMatrix {
 public:
  QuadMatrix() = default;
  explicit QuadMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  quad& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  quad operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<quad> data_;
};

using QuadVector = std::vector<quad>;

/// Lower Cholesky factor of a symmetric matrix. Returns false when a pivot is
/// not strictly positive.
bool cholesky(const QuadMatrix& a, QuadMatrix& l);

/// Solves L x = b in place (L lower triangular).
void forward_solve(const QuadMatrix& l, QuadVector& b);
/// Solves L^T x = b in place.
void backward_solve_transposed(const QuadMatrix& l, QuadVector& b);

/// L^{-1} A L^{-T} for symmetric A, symmetrized.
QuadMatrix congruence_reduce(const QuadMatrix& l, const QuadMatrix& a);

QuadVector multiply(const QuadMatrix& a, const QuadVector& x);
quad dot(const QuadVector& x, const QuadVector& y);
quad norm(const QuadVector& x);

/// Condition number estimate of a symmetric positive definite matrix from
/// power iteration (largest eigenvalue) and inverse iteration through its
/// Cholesky factor (smallest eigenvalue).
double spd_condition_estimate(const QuadMatrix& a, const QuadMatrix& l, int iterations = 60);

}  // namespace sosbound::detail
