#include "quad_linalg.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace sosbound::detail {

quad quad_abs(quad x) { return x < 0 ? -x : x; }

quad quad_ldexp(quad x, int e) {
  quad factor = e >= 0 ? quad(2) : quad(0.5);
  unsigned k = static_cast<unsigned>(e >= 0 ? e : -e);
  while (k != 0) {
    if (k & 1U) x *= factor;
    factor *= factor;
    k >>= 1U;
  }
  return x;
}

namespace {

// Nonnegative integer below 2^128 to binary128, limb by limb.
quad mpz_to_quad(const mpz_class& z) {
  quad out = 0;
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = limbs; i-- > 0;) {
    out = quad_ldexp(out, 64) + quad(static_cast<std::uint64_t>(mpz_getlimbn(z.get_mpz_t(), i)));
  }
  return out;
}

}  // namespace

quad to_quad(const Rational& q) {
  if (q == 0) return 0;
  mpz_class num = abs(q.get_num());
  const mpz_class& den = q.get_den();
  // Scale so the integer quotient carries 113 significant bits.
  const long shift = 113 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                            static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  mpz_class quotient;
  if (shift >= 0) {
    mpz_class scaled = num << static_cast<mp_bitcnt_t>(shift);
    mpz_fdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_class scaled = den << static_cast<mp_bitcnt_t>(-shift);
    mpz_fdiv_q(quotient.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
  }
  const quad magnitude = quad_ldexp(mpz_to_quad(quotient), static_cast<int>(-shift));
  return q < 0 ? -magnitude : magnitude;
}

Rational to_rational(quad x) {
  if (x == 0) return 0;
  const bool negative = x < 0;
  x = quad_abs(x);
  // Normalize into [2^112, 2^113) so the value is an integer times 2^e.
  int e = 0;
  const quad lower = quad_ldexp(quad(1), 112);
  const quad upper = quad_ldexp(quad(1), 113);
  while (x >= upper) {
    x *= quad(0.5);
    ++e;
  }
  while (x < lower) {
    x *= quad(2);
    --e;
  }
  const quad two64 = quad_ldexp(quad(1), 64);
  const auto hi = static_cast<std::uint64_t>(x / two64);
  const auto lo = static_cast<std::uint64_t>(x - quad(hi) * two64);
  mpz_class mantissa = mpz_class(static_cast<unsigned long>(hi)) << 64;
  mantissa += mpz_class(static_cast<unsigned long>(lo));
  Rational out(mantissa);
  if (e > 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else if (e < 0) {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return negative ? Rational(-out) : out;
}

quad quad_sqrt(quad x) {
  if (x <= 0) return 0;
  // Double seed, rescaled to stay within double range, then Newton steps.
  int e = 0;
  quad m = x;
  const quad big = quad_ldexp(quad(1), 200);
  const quad small = quad_ldexp(quad(1), -200);
  while (m > big) {
    m = quad_ldexp(m, -400);
    e += 400;
  }
  while (m < small) {
    m = quad_ldexp(m, 400);
    e -= 400;
  }
  quad y = quad_ldexp(quad(std::sqrt(static_cast<double>(m))), e / 2);
  for (int i = 0; i < 3; ++i) y = (y + x / y) * quad(0.5);
  return y;
}

bool cholesky(const QuadMatrix& a, QuadMatrix& l) {
  const std::size_t n = a.size();
  l = QuadMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    quad d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0)) return false;
    const quad ljj = quad_sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      quad s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return true;
}

void forward_solve(const QuadMatrix& l, QuadVector& b) {
  const std::size_t n = l.size();
  for (std::size_t i = 0; i < n; ++i) {
    quad s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b[k];
    b[i] = s / l(i, i);
  }
}

void backward_solve_transposed(const QuadMatrix& l, QuadVector& b) {
  const std::size_t n = l.size();
  for (std::size_t i = n; i-- > 0;) {
    quad s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * b[k];
    b[i] = s / l(i, i);
  }
}

QuadMatrix congruence_reduce(const QuadMatrix& l, const QuadMatrix& a) {
  const std::size_t n = a.size();
  // W = L^{-1} A, column by column of A.
  QuadMatrix w(n);
  QuadVector col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = a(i, j);
    forward_solve(l, col);
    for (std::size_t i = 0; i < n; ++i) w(i, j) = col[i];
  }
  // M = L^{-1} W^T, since (L^{-1} A L^{-T}) = L^{-1} (L^{-1} A)^T.
  QuadMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = w(j, i);
    forward_solve(l, col);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const quad s = (m(i, j) + m(j, i)) * quad(0.5);
      m(i, j) = s;
      m(j, i) = s;
    }
  }
  return m;
}

QuadVector multiply(const QuadMatrix& a, const QuadVector& x) {
  const std::size_t n = a.size();
  QuadVector y(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    quad s = 0;
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

quad dot(const QuadVector& x, const QuadVector& y) {
  quad s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

quad norm(const QuadVector& x) { return quad_sqrt(dot(x, x)); }

namespace {

void normalize(QuadVector& x) {
  const quad nx = norm(x);
  if (nx > 0) {
    for (quad& v : x) v /= nx;
  }
}

// Deterministic start vector with components of both signs so it is not
// orthogonal to the extreme eigenvectors in practice.
QuadVector start_vector(std::size_t n) {
  QuadVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = quad(1.0 + 0.5 * std::sin(1.0 + 2.3 * static_cast<double>(i)));
  }
  normalize(x);
  return x;
}

}  // namespace

double spd_condition_estimate(const QuadMatrix& a, const QuadMatrix& l, int iterations) {
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  QuadVector x = start_vector(n);
  quad lambda_max = 0;
  for (int it = 0; it < iterations; ++it) {
    QuadVector y = multiply(a, x);
    lambda_max = dot(x, y);
    x = std::move(y);
    normalize(x);
  }
  x = start_vector(n);
  quad mu_max = 0;  // largest eigenvalue of A^{-1}
  for (int it = 0; it < iterations; ++it) {
    QuadVector y = x;
    forward_solve(l, y);
    backward_solve_transposed(l, y);
    mu_max = dot(x, y);
    x = std::move(y);
    normalize(x);
  }
  if (!(lambda_max > 0) || !(mu_max > 0)) return std::numeric_limits<double>::infinity();
  return static_cast<double>(lambda_max * mu_max);
}

}  // namespace sosbound::detail
