#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sosbound/polynomial.hpp"

namespace sosbound::testgen {

/// Sparse polynomial with small rational coefficients and total degree at
/// most `max_degree`.
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n, int max_degree,
                                    int max_terms = 6) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  Polynomial::TermMap map;
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    std::vector<int> exps(n, 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++exps[var(rng)];
    Rational c(num(rng), den(rng));
    c.canonicalize();
    map[MultiIndex(exps)] += c;
  }
  return Polynomial(n, std::move(map));
}

/// p/q in lowest terms.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline std::vector<double> random_point(std::mt19937_64& rng, std::size_t n, double lo = -1.5,
                                        double hi = 1.5) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

}  // namespace sosbound::testgen
