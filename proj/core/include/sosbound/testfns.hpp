#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sosbound/moments.hpp"
#include "sosbound/polynomial.hpp"

namespace sosbound::testfns {

struct TestCase {
  std::string name;
  std::string title;
  /// Formula in the parse_polynomial grammar, instantiated for `n`.
  std::string source;
  std::size_t n;
  Domain domain;
  double f_min;
  std::vector<std::vector<double>> minimizers;
  bool parametric = false;

  Polynomial polynomial() const { return parse_polynomial(source, n); }
};

/// Looks up a catalog entry. `n` is required for the n-variate families
/// (styblinski-tang, rosenbrock) and must equal 2 when given for the others.
TestCase get(const std::string& name, std::optional<std::size_t> n = std::nullopt);

/// Sorted catalog names.
std::vector<std::string> list();

bool is_parametric(const std::string& name);

}  // namespace sosbound::testfns
