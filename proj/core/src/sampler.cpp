#include "sosbound/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sosbound/errors.hpp"

namespace sosbound {

namespace {

constexpr long double kDegenerateNormalizer = 1e-12L;
constexpr int kMaxRetries = 100;

// Upper integration limit of coordinate i (0-based) as a polynomial in the
// earlier coordinates.
Polynomial upper_limit(const Domain& dom, std::size_t i) {
  const std::size_t n = dom.n();
  if (dom.kind() == DomainKind::box) return Polynomial::constant(n, dom.bounds()[i].second);
  Polynomial limit = Polynomial::constant(n, 1);
  for (std::size_t k = 0; k < i; ++k) limit = limit - Polynomial::variable(n, k);
  return limit;
}

Polynomial lower_limit(const Domain& dom, std::size_t i) {
  const std::size_t n = dom.n();
  if (dom.kind() == DomainKind::box) return Polynomial::constant(n, dom.bounds()[i].first);
  return Polynomial(n);
}

}  // namespace

ConditionalChain build_chain(const Polynomial& density, const Domain& dom) {
  if (dom.kind() == DomainKind::ball) {
    throw UnsupportedDomain("sampling from the ball is not supported (conditional limits are not polynomial)");
  }
  if (density.n_vars() != dom.n()) throw DimensionError("density dimension does not match domain");
  const std::size_t n = dom.n();
  std::vector<Polynomial> marginals(n, Polynomial(n));
  marginals[n - 1] = density;
  for (std::size_t i = n - 1; i > 0; --i) {
    marginals[i - 1] = definite_integrate(marginals[i], i, lower_limit(dom, i), upper_limit(dom, i));
  }
  const Polynomial total =
      definite_integrate(marginals[0], 0, lower_limit(dom, 0), upper_limit(dom, 0));
  const double mass = to_double(total.coefficient(MultiIndex(n)));
  if (std::abs(mass - 1.0) > 1e-6) {
    throw InvalidArgument("density integrates to " + std::to_string(mass) + ", expected 1");
  }
  return {dom, density, std::move(marginals)};
}

long double CumulativeFunction::operator()(long double y) const {
  long double s = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) s = s * y + coeffs[k];
  return s;
}

long double CumulativeFunction::derivative(long double y) const {
  long double s = 0;
  for (std::size_t k = coeffs.size(); k-- > 1;) s = s * y + coeffs[k] * static_cast<long double>(k);
  return s;
}

Polynomial CumulativeFunction::as_polynomial() const {
  Polynomial::TermMap terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    terms.emplace(MultiIndex{static_cast<int>(k)},
                  rational_from_double(static_cast<double>(coeffs[k])));
  }
  return Polynomial(1, std::move(terms));
}

CumulativeFunction conditional_cdf(const ConditionalChain& chain, std::size_t i,
                                   std::span<const double> prefix) {
  const Domain& dom = chain.domain;
  if (i >= dom.n()) throw DimensionError("coordinate index out of range");
  if (prefix.size() < i) throw DimensionError("prefix shorter than the coordinate index");

  long double lo = 0;
  long double hi = 0;
  if (dom.kind() == DomainKind::box) {
    lo = to_double(dom.bounds()[i].first);
    hi = to_double(dom.bounds()[i].second);
  } else {
    long double used = 0;
    for (std::size_t k = 0; k < i; ++k) used += prefix[k];
    hi = std::max<long double>(0, 1 - used);
  }

  // Partially evaluate f_{1..i+1} at the prefix to get g(y) = sum_k g_k y^k.
  const Polynomial& marginal = chain.marginals[i];
  std::vector<long double> g(static_cast<std::size_t>(marginal.degree_in(i)) + 1, 0);
  for (const auto& [alpha, c] : marginal.terms()) {
    long double term = static_cast<long double>(to_double(c));
    for (std::size_t k = 0; k < i; ++k) {
      for (int e = 0; e < alpha[k]; ++e) term *= prefix[k];
    }
    g[static_cast<std::size_t>(alpha[i])] += term;
  }

  // G(y) = antiderivative with G(0) = 0; F = (G - G(lo)) / (G(hi) - G(lo)).
  CumulativeFunction F;
  F.lo = lo;
  F.hi = hi;
  F.coeffs.assign(g.size() + 1, 0);
  for (std::size_t k = 0; k < g.size(); ++k) F.coeffs[k + 1] = g[k] / static_cast<long double>(k + 1);
  const long double g_lo = F(lo);
  const long double norm = F(hi) - g_lo;
  if (!(norm >= kDegenerateNormalizer)) {
    throw DegeneratePrefix("conditional density normalizer " +
                           std::to_string(static_cast<double>(norm)) + " is below 1e-12");
  }
  F.coeffs[0] -= g_lo;
  for (long double& c : F.coeffs) c /= norm;
  return F;
}

double invert_cdf(const CumulativeFunction& F, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("u must lie in [0, 1]");
  long double a = F.lo;
  long double b = F.hi;
  if (u == 0.0) return static_cast<double>(a);
  const long double target = u;
  while (b - a > 1e-12L) {
    const long double m = 0.5L * (a + b);
    if (F(m) >= target) {
      b = m;
    } else {
      a = m;
    }
  }
  long double x = b;
  const long double slope = F.derivative(x);
  if (slope > 0) {
    const long double polished = x - (F(x) - target) / slope;
    if (polished >= a && polished <= b) x = polished;
  }
  return static_cast<double>(x);
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> draw_point(const ConditionalChain& chain, std::uint64_t seed,
                               std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  const std::size_t n = chain.domain.n();
  std::vector<double> x(n);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    try {
      for (std::size_t i = 0; i < n; ++i) {
        const CumulativeFunction F = conditional_cdf(chain, i, std::span(x.data(), i));
        x[i] = invert_cdf(F, uniform01(rng));
      }
      return x;
    } catch (const DegeneratePrefix&) {
      // The prefix fell where the density vanishes; draw a fresh one.
    }
  }
  throw DegeneratePrefix("no admissible prefix after " + std::to_string(kMaxRetries) + " retries");
}

}  // namespace

SampleBatch sample(const ConditionalChain& chain, std::size_t count, std::uint64_t seed,
                   const std::optional<Polynomial>& f) {
  if (count < 1) throw InvalidArgument("sample count must be at least 1");
  if (f && f->n_vars() != chain.domain.n()) {
    throw DimensionError("objective dimension does not match domain");
  }
  SampleBatch batch;
  batch.seed = seed;
  batch.points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) batch.points.push_back(draw_point(chain, seed, k));
  if (f) {
    batch.values.reserve(count);
    for (const auto& x : batch.points) batch.values.push_back(f->evaluate(x));
  }
  return batch;
}

double markov_check(const Polynomial& f, const SampleBatch& batch, double bound, double f_min,
                    double eps) {
  if (!(eps > 0)) throw InvalidArgument("eps must be positive");
  if (batch.points.empty()) throw InvalidArgument("empty sample batch");
  const double threshold = bound + eps * (bound - f_min);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < batch.points.size(); ++k) {
    const double v = batch.values.empty() ? f.evaluate(batch.points[k]) : batch.values[k];
    if (v > threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(batch.points.size());
}

SampleSummary summarize(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("no values to summarize");
  SampleSummary s;
  const double count = static_cast<double>(values.size());
  double sum = 0.0;
  s.min = values.front();
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
  }
  s.mean = sum / count;
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.variance = values.size() > 1 ? sq / (count - 1) : 0.0;
  s.stderr_mean = std::sqrt(s.variance / count);
  return s;
}

}  // namespace sosbound
