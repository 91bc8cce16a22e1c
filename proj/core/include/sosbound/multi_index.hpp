#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace sosbound {

/// Exponent vector alpha in N^n with its total degree |alpha| cached.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : exps_(n, 0) {}
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}

  static MultiIndex unit(std::size_t n, std::size_t var, int power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  int degree() const noexcept { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  std::span<const int> exponents() const noexcept { return exps_; }

  /// Copy with entry `i` replaced.
  MultiIndex with(std::size_t i, int value) const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Graded lexicographic order: lower total degree first; within a degree,
/// larger x1 exponent first, then larger x2 exponent, and so on. The basis of
/// degree <= 2 in two variables is 1, x1, x2, x1^2, x1*x2, x2^2.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const noexcept;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const noexcept;
};

/// All multi-indices of N(n, max_degree) listed in graded-lex order.
std::vector<MultiIndex> enumerate_multi_indices(std::size_t n, int max_degree);

/// C(n + d, d) = |N(n, d)|, saturating at UINT64_MAX.
std::uint64_t count_multi_indices(std::size_t n, int max_degree);

/// Position of a multi-index in the graded-lex listing of N(n, d), computed
/// combinatorially so moment tables can be stored as flat arrays.
class MonomialRanker {
 public:
  MonomialRanker(std::size_t n, int max_degree);

  std::size_t n() const noexcept { return n_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return size_; }

  /// Requires a.size() == n and a.degree() <= max_degree.
  std::size_t rank(const MultiIndex& a) const;
  std::size_t rank(std::span<const int> exps, int degree) const;

 private:
  // compositions_[k][m] = number of ways to write m as an ordered sum of k
  // nonnegative integers.
  std::uint64_t compositions(std::size_t parts, int total) const;

  std::size_t n_;
  int max_degree_;
  std::size_t size_;
  std::vector<std::vector<std::uint64_t>> compositions_;
};

/// The monomial basis b(x) = (x^alpha) over N(n, r) in graded-lex order.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t n, int r);

  std::size_t n() const noexcept { return n_; }
  int order() const noexcept { return r_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

 private:
  std::size_t n_;
  int r_;
  std::vector<MultiIndex> indices_;
};

}  // namespace sosbound
