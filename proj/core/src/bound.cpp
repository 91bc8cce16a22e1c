#include "sosbound/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "quad_linalg.hpp"
#include "sosbound/errors.hpp"

namespace sosbound {

using detail::quad;
using detail::QuadMatrix;
using detail::QuadVector;

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd out(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out(i, j) = sosbound::to_double((*this)(i, j));
  }
  return out;
}

void dump_matrix(std::ostream& os, const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j > 0) os << ' ';
      os << to_string(m(i, j));
    }
    os << '\n';
  }
}

MomentMatrices assemble_AB(const Polynomial& f, const Domain& dom, int r) {
  if (r < 0) throw InvalidArgument("order r must be nonnegative");
  if (f.n_vars() != dom.n()) throw DimensionError("polynomial dimension does not match domain");
  return assemble_AB(f, *moment_table(dom, 2 * r + f.degree()), r);
}

MomentMatrices assemble_AB(const Polynomial& f, const MomentTable& table, int r) {
  if (r < 0) throw InvalidArgument("order r must be nonnegative");
  const std::size_t n = table.domain().n();
  if (f.n_vars() != n) throw DimensionError("polynomial dimension does not match domain");
  if (table.max_degree() < 2 * r + f.degree()) {
    throw InsufficientDegree("order " + std::to_string(r) + " needs moments of degree " +
                             std::to_string(2 * r + f.degree()) + ", table has " +
                             std::to_string(table.max_degree()));
  }

  // Both matrices are Hankel-like: entries depend on alpha + beta only.
  const MonomialRanker gamma_rank(n, 2 * r);
  std::vector<Rational> a_of(gamma_rank.size());
  std::vector<Rational> b_of(gamma_rank.size());
  for (const MultiIndex& gamma : enumerate_multi_indices(n, 2 * r)) {
    const std::size_t g = gamma_rank.rank(gamma);
    b_of[g] = table.coef(gamma);
    Rational acc = 0;
    for (const auto& [delta, c] : f.terms()) acc += c * table.coef(gamma + delta);
    a_of[g] = std::move(acc);
  }

  MomentMatrices out{MonomialBasis(n, r), RationalMatrix(), RationalMatrix(), table.pi_power()};
  const std::size_t size = out.basis.size();
  out.A = RationalMatrix(size);
  out.B = RationalMatrix(size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i; j < size; ++j) {
      const std::size_t g = gamma_rank.rank(out.basis[i] + out.basis[j]);
      out.A(i, j) = a_of[g];
      out.B(i, j) = b_of[g];
      out.A(j, i) = a_of[g];
      out.B(j, i) = b_of[g];
    }
  }
  return out;
}

namespace {

constexpr double kTieTolerance = 1e-10;

// Among the eigenvectors V (columns, monomial coordinates) of a cluster of
// equal eigenvalues whose preimages Y are orthonormal, the combination with
// unit B-norm whose first nonzero coordinate is as large as possible. With a
// single column this reduces to fixing the sign of the first nonzero entry.
template <typename Real>
std::vector<Real> canonical_combination(const std::vector<std::vector<Real>>& columns) {
  const std::size_t n = columns.front().size();
  const std::size_t m = columns.size();
  Real largest = 0;
  for (const auto& col : columns) {
    for (Real x : col) largest = std::max(largest, x < 0 ? -x : x);
  }
  std::vector<Real> coeffs(m, 0);
  for (std::size_t k = 0; k < n; ++k) {
    Real row_norm2 = 0;
    for (std::size_t c = 0; c < m; ++c) row_norm2 += columns[c][k] * columns[c][k];
    const double row_norm = std::sqrt(static_cast<double>(row_norm2));
    if (row_norm > 1e-12 * static_cast<double>(largest)) {
      for (std::size_t c = 0; c < m; ++c) coeffs[c] = columns[c][k] / Real(row_norm);
      break;
    }
  }
  std::vector<Real> v(n, 0);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t k = 0; k < n; ++k) v[k] += coeffs[c] * columns[c][k];
  }
  return v;
}

// Number of eigenvalues (ascending) within the tie tolerance of the first.
Eigen::Index cluster_size(const Eigen::VectorXd& eigenvalues) {
  const double scale = std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
  Eigen::Index m = 1;
  while (m < eigenvalues.size() && eigenvalues(m) - eigenvalues(0) < kTieTolerance * scale) ++m;
  return m;
}

struct QuadSolution {
  quad lambda = 0;
  QuadVector v;
  double cond_B = 1.0;
  double residual = 0.0;
};

QuadSolution solve_quad(const RationalMatrix& a_exact, const RationalMatrix& b_exact,
                        double cond_limit) {
  const std::size_t n = a_exact.size();
  QuadMatrix a(n);
  QuadMatrix b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      a(i, j) = a(j, i) = detail::to_quad(a_exact(i, j));
      b(i, j) = b(j, i) = detail::to_quad(b_exact(i, j));
    }
  }

  // Jacobi scaling D B D with D = diag(B)^{-1/2}.
  QuadVector d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(b(i, i) > 0)) {
      throw ConditioningError("B has a nonpositive diagonal entry",
                              std::numeric_limits<double>::infinity());
    }
    d[i] = quad(1) / detail::quad_sqrt(b(i, i));
  }
  QuadMatrix as(n);
  QuadMatrix bs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      as(i, j) = d[i] * a(i, j) * d[j];
      bs(i, j) = d[i] * b(i, j) * d[j];
    }
  }

  QuadMatrix l;
  if (!detail::cholesky(bs, l)) {
    throw ConditioningError("B is not numerically positive definite",
                            std::numeric_limits<double>::infinity());
  }
  const double cond = detail::spd_condition_estimate(bs, l);
  if (!(cond <= cond_limit)) {
    throw ConditioningError("B is too ill-conditioned for the working precision", cond);
  }

  const QuadMatrix m = detail::congruence_reduce(l, as);
  Eigen::MatrixXd md(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) md(i, j) = static_cast<double>(m(i, j));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(md);
  if (eig.info() != Eigen::Success) throw ConditioningError("symmetric eigensolver failed", cond);

  const Eigen::Index cluster = cluster_size(eig.eigenvalues());
  std::vector<QuadVector> columns;
  for (Eigen::Index c = 0; c < cluster; ++c) {
    QuadVector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = eig.eigenvectors()(static_cast<Eigen::Index>(i), c);
    detail::backward_solve_transposed(l, y);
    for (std::size_t i = 0; i < n; ++i) y[i] *= d[i];
    columns.push_back(std::move(y));
  }
  QuadVector v = canonical_combination(columns);

  QuadVector av = detail::multiply(a, v);
  QuadVector bv = detail::multiply(b, v);
  const quad vbv = detail::dot(v, bv);
  if (!(vbv > 0)) throw ConditioningError("eigenvector has nonpositive B-norm", cond);
  const quad lambda = detail::dot(v, av) / vbv;
  const quad scale = quad(1) / detail::quad_sqrt(vbv);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] *= scale;
    av[i] *= scale;
    bv[i] *= scale;
  }
  QuadVector res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = av[i] - lambda * bv[i];
  const double residual = static_cast<double>(detail::norm(res) / detail::norm(bv));
  return {lambda, std::move(v), cond, residual};
}

}  // namespace

GeneralizedEigenpair smallest_generalized_eigenpair(const Eigen::MatrixXd& A,
                                                    const Eigen::MatrixXd& B,
                                                    double cond_limit) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) {
    throw DimensionError("A and B must be square matrices of equal size");
  }
  if (A.rows() == 0) throw InvalidArgument("empty matrices");
  const double inf = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd diag = B.diagonal();
  if ((diag.array() <= 0).any()) throw ConditioningError("B has a nonpositive diagonal entry", inf);
  const Eigen::VectorXd d = diag.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd bs = d.asDiagonal() * B * d.asDiagonal();
  const Eigen::MatrixXd as = d.asDiagonal() * A * d.asDiagonal();

  Eigen::LLT<Eigen::MatrixXd> llt(bs);
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("B is not numerically positive definite", inf);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> beig(bs, Eigen::EigenvaluesOnly);
  const double bmin = beig.eigenvalues().minCoeff();
  const double cond = bmin > 0 ? beig.eigenvalues().maxCoeff() / bmin : inf;
  if (!(cond <= cond_limit)) {
    throw ConditioningError("B is too ill-conditioned for double precision", cond);
  }

  const Eigen::MatrixXd lower = llt.matrixL();
  Eigen::MatrixXd w = lower.triangularView<Eigen::Lower>().solve(as);
  Eigen::MatrixXd m = lower.triangularView<Eigen::Lower>().solve(w.transpose());
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) throw ConditioningError("symmetric eigensolver failed", cond);

  const Eigen::Index cluster = cluster_size(eig.eigenvalues());
  std::vector<std::vector<double>> columns;
  for (Eigen::Index c = 0; c < cluster; ++c) {
    Eigen::VectorXd y = lower.transpose().triangularView<Eigen::Upper>().solve(eig.eigenvectors().col(c));
    y = d.asDiagonal() * y;
    columns.emplace_back(y.data(), y.data() + y.size());
  }
  const std::vector<double> picked = canonical_combination(columns);
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(picked.data(), static_cast<Eigen::Index>(picked.size()));
  v /= std::sqrt(v.dot(B * v));
  return {eig.eigenvalues()(0), v, cond};
}

namespace {

bool use_extended(const BoundOptions& options, std::size_t basis_size) {
  switch (options.precision) {
    case Precision::extended:
      return true;
    case Precision::standard:
      return false;
    case Precision::automatic:
      return basis_size <= kAutoExtendedMaxBasis;
  }
  return true;
}

// (sum v_a x^a)^2 scaled to unit integral.
Polynomial build_density(const MonomialBasis& basis, const std::vector<double>& v,
                         const MomentTable& table) {
  const std::size_t n = basis.n();
  std::vector<Rational> coef(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) coef[i] = rational_from_double(v[i]);
  Polynomial::TermMap terms;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (coef[i] == 0) continue;
    for (std::size_t j = i; j < v.size(); ++j) {
      if (coef[j] == 0) continue;
      Rational c = coef[i] * coef[j];
      if (i != j) c *= 2;
      auto [it, inserted] = terms.try_emplace(basis[i] + basis[j], c);
      if (!inserted) it->second += c;
    }
  }
  Polynomial square(n, std::move(terms));
  const Moment mass = integrate_poly_exact(table, square);
  Rational total = mass.coef;
  if (mass.pi_power != 0) total *= rational_from_double(std::pow(std::numbers::pi, mass.pi_power));
  if (total <= 0) throw ConditioningError("density has no mass", std::numeric_limits<double>::infinity());
  return Rational(1 / total) * square;
}

BoundResult bound_from_table(const Polynomial& f, const MomentTable& table, int r,
                             const BoundOptions& options) {
  const MomentMatrices mm = assemble_AB(f, table, r);
  const bool extended = use_extended(options, mm.basis.size());
  const double limit = options.cond_limit > 0 ? options.cond_limit : extended ? 1e30 : 1e14;
  BoundResult result;
  result.r = r;
  std::vector<double> v;
  if (extended) {
    QuadSolution sol = solve_quad(mm.A, mm.B, limit);
    result.value = static_cast<double>(sol.lambda);
    result.cond_B = sol.cond_B;
    result.residual = sol.residual;
    v.reserve(sol.v.size());
    for (quad x : sol.v) v.push_back(static_cast<double>(x));
  } else {
    const Eigen::MatrixXd a = mm.A.to_double();
    const Eigen::MatrixXd b = mm.B.to_double();
    GeneralizedEigenpair pair = smallest_generalized_eigenpair(a, b, limit);
    result.value = pair.lambda;
    result.cond_B = pair.cond_B;
    result.residual = (a * pair.v - pair.lambda * b * pair.v).norm() / (b * pair.v).norm();
    v.assign(pair.v.data(), pair.v.data() + pair.v.size());
  }
  result.density = build_density(mm.basis, v, table);
  // The pencil omitted pi^p; the B-normalized vector of the true pencil is
  // smaller by pi^{p/2}.
  const double unscale = std::pow(std::numbers::pi, -0.5 * mm.pi_power);
  for (double& x : v) x *= unscale;
  result.eigvec = std::move(v);
  return result;
}

void map_density_back(BoundResult& result, const RescaledProblem& rp) {
  const std::size_t n = rp.scale.size();
  std::vector<Rational> inv_scale(n);
  std::vector<Rational> inv_shift(n);
  Rational jacobian = 1;
  for (std::size_t i = 0; i < n; ++i) {
    inv_scale[i] = 1 / rp.scale[i];
    inv_shift[i] = -rp.shift[i] / rp.scale[i];
    jacobian *= rp.scale[i];
  }
  result.density = Rational(1 / jacobian) * substitute_affine(result.density, inv_scale, inv_shift);
}

}  // namespace

RescaledProblem rescale_to_unit_box(const Polynomial& f, const Domain& box) {
  if (box.kind() != DomainKind::box) throw UnsupportedDomain("rescaling applies to boxes only");
  if (f.n_vars() != box.n()) throw DimensionError("polynomial dimension does not match domain");
  const std::size_t n = box.n();
  std::vector<Rational> scale(n);
  std::vector<Rational> shift(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [lo, hi] = box.bounds()[i];
    scale[i] = (hi - lo) / 2;
    shift[i] = (hi + lo) / 2;
  }
  Polynomial g = substitute_affine(f, scale, shift);
  return {std::move(g), Domain::cube(n, -1, 1), std::move(scale), std::move(shift)};
}

BoundResult compute_bound(const Polynomial& f, const Domain& dom, int r,
                          const BoundOptions& options) {
  if (r < 0) throw InvalidArgument("order r must be nonnegative");
  if (f.n_vars() != dom.n()) throw DimensionError("polynomial dimension does not match domain");
  if (options.rescale) {
    const RescaledProblem rp = rescale_to_unit_box(f, dom);
    BoundResult result =
        bound_from_table(rp.f, *moment_table(rp.domain, 2 * r + rp.f.degree()), r, options);
    map_density_back(result, rp);
    return result;
  }
  return bound_from_table(f, *moment_table(dom, 2 * r + f.degree()), r, options);
}

SweepResult bound_sweep(const Polynomial& f, const Domain& dom, int r_max,
                        const BoundOptions& options) {
  if (r_max < 1) throw InvalidArgument("r_max must be at least 1");
  if (f.n_vars() != dom.n()) throw DimensionError("polynomial dimension does not match domain");
  std::optional<RescaledProblem> rp;
  if (options.rescale) rp = rescale_to_unit_box(f, dom);
  const Polynomial& g = rp ? rp->f : f;
  const auto table = moment_table(rp ? rp->domain : dom, 2 * r_max + g.degree());
  SweepResult sweep;
  for (int r = 1; r <= r_max; ++r) {
    try {
      BoundResult result = bound_from_table(g, *table, r, options);
      if (rp) map_density_back(result, *rp);
      sweep.results.push_back(std::move(result));
    } catch (const ConditioningError& e) {
      sweep.warning = "sweep stopped at r=" + std::to_string(r) + ": " + e.what();
      sweep.failed_r = r;
      break;
    }
  }
  return sweep;
}

}  // namespace sosbound
