#include "sosbound/multi_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "sosbound/errors.hpp"

namespace sosbound {

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw InvalidArgument("multi-index entries must be nonnegative");
    degree_ += e;
  }
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t var, int power) {
  std::vector<int> e(n, 0);
  e.at(var) = power;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::with(std::size_t i, int value) const {
  MultiIndex out = *this;
  out.degree_ += value - out.exps_.at(i);
  out.exps_[i] = value;
  return out;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw DimensionError("multi-index length mismatch");
  MultiIndex out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.exps_[i] += b.exps_[i];
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const noexcept {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.size() < b.size();
}

std::size_t MultiIndexHash::operator()(const MultiIndex& a) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int e : a.exponents()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void enumerate_degree(std::size_t n, int remaining, std::vector<int>& prefix,
                      std::vector<MultiIndex>& out) {
  const std::size_t pos = prefix.size();
  if (pos + 1 == n) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_degree(n, remaining - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(std::size_t n, int max_degree) {
  if (n == 0) throw InvalidArgument("number of variables must be positive");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(count_multi_indices(n, max_degree)));
  std::vector<int> prefix;
  for (int d = 0; d <= max_degree; ++d) enumerate_degree(n, d, prefix, out);
  return out;
}

std::uint64_t count_multi_indices(std::size_t n, int max_degree) {
  if (max_degree < 0) return 0;
  // C(n + d, d) computed incrementally; each partial product is an integer.
  unsigned __int128 c = 1;
  for (int k = 1; k <= max_degree; ++k) {
    c = c * (n + static_cast<unsigned>(k)) / static_cast<unsigned>(k);
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(c);
}

MonomialRanker::MonomialRanker(std::size_t n, int max_degree)
    : n_(n), max_degree_(max_degree) {
  if (n == 0) throw InvalidArgument("number of variables must be positive");
  if (max_degree < 0) throw InvalidArgument("max degree must be nonnegative");
  size_ = static_cast<std::size_t>(count_multi_indices(n, max_degree));
  compositions_.assign(n + 1, std::vector<std::uint64_t>(max_degree + 1, 0));
  for (int m = 0; m <= max_degree; ++m) compositions_[0][m] = (m == 0);
  for (std::size_t k = 1; k <= n; ++k) {
    std::uint64_t running = 0;
    for (int m = 0; m <= max_degree; ++m) {
      running += compositions_[k - 1][m];
      compositions_[k][m] = running;
    }
  }
}

std::uint64_t MonomialRanker::compositions(std::size_t parts, int total) const {
  return compositions_[parts][total];
}

std::size_t MonomialRanker::rank(const MultiIndex& a) const {
  return rank(a.exponents(), a.degree());
}

std::size_t MonomialRanker::rank(std::span<const int> exps, int degree) const {
  if (exps.size() != n_) throw DimensionError("multi-index length mismatch");
  if (degree > max_degree_) throw InsufficientDegree("multi-index degree exceeds table");
  // Indices of lower degree come first: |N(n, degree-1)|.
  std::uint64_t r = degree == 0 ? 0 : count_multi_indices(n_, degree - 1);
  int remaining = degree;
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const std::size_t tail = n_ - i - 1;
    // Entries with a larger exponent at position i precede this one.
    for (int b = exps[i] + 1; b <= remaining; ++b) r += compositions(tail, remaining - b);
    remaining -= exps[i];
  }
  return static_cast<std::size_t>(r);
}

MonomialBasis::MonomialBasis(std::size_t n, int r)
    : n_(n), r_(r), indices_(enumerate_multi_indices(n, r)) {
  if (r < 0) throw InvalidArgument("order r must be nonnegative");
}

}  // namespace sosbound
