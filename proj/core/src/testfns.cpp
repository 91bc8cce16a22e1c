#include "sosbound/testfns.hpp"

#include <algorithm>
#include <cmath>

#include "sosbound/errors.hpp"

namespace sosbound::testfns {

namespace {

constexpr double kHalfSqrt2 = 0.70710678118654752440;
// Root of 2x^3 - 16x + 5/2 = 0 in [-5, 0].
constexpr double kStyblinskiTangRoot = -2.903534;

std::vector<std::vector<double>> sign_orbit(double v) {
  return {{v, v}, {v, -v}, {-v, v}, {-v, -v}};
}

std::string styblinski_tang_source(std::size_t n) {
  std::string out;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string x = "x" + std::to_string(i);
    if (i > 1) out += " + ";
    out += "0.5*" + x + "^4 - 8*" + x + "^2 + 2.5*" + x;
  }
  return out;
}

std::string rosenbrock_source(std::size_t n) {
  std::string out;
  for (std::size_t i = 1; i < n; ++i) {
    const std::string x = "x" + std::to_string(i);
    const std::string y = "x" + std::to_string(i + 1);
    if (i > 1) out += " + ";
    out += "100*(" + y + " - " + x + "^2)^2 + (" + x + " - 1)^2";
  }
  return out;
}

TestCase fixed(std::string name, std::string title, std::string source, Domain dom,
               std::vector<std::vector<double>> minimizers) {
  return {std::move(name), std::move(title), std::move(source), 2, std::move(dom), 0.0,
          std::move(minimizers), false};
}

}  // namespace

std::vector<std::string> list() {
  std::vector<std::string> names = {
      "booth",
      "matyas",
      "three-hump-camel",
      "motzkin",
      "styblinski-tang",
      "rosenbrock",
      "matyas-modified-s",
      "three-hump-camel-modified-s",
      "matyas-modified-b",
      "three-hump-camel-modified-b",
  };
  std::sort(names.begin(), names.end());
  return names;
}

bool is_parametric(const std::string& name) {
  return name == "styblinski-tang" || name == "rosenbrock";
}

TestCase get(const std::string& name, std::optional<std::size_t> n) {
  if (is_parametric(name)) {
    if (!n) throw InvalidArgument("test function '" + name + "' needs a dimension n");
    const std::size_t dim = *n;
    if (name == "styblinski-tang") {
      if (dim < 1) throw InvalidArgument("styblinski-tang needs n >= 1");
      return {name, "Styblinski-Tang function", styblinski_tang_source(dim), dim,
              Domain::cube(dim, -5, 5), -39.16599 * static_cast<double>(dim),
              {std::vector<double>(dim, kStyblinskiTangRoot)}, true};
    }
    if (dim < 2) throw InvalidArgument("rosenbrock needs n >= 2");
    return {name, "Rosenbrock function", rosenbrock_source(dim), dim,
            Domain::cube(dim, Rational(-256, 125), Rational(256, 125)), 0.0,
            {std::vector<double>(dim, 1.0)}, true};
  }
  if (n && *n != 2) {
    throw InvalidArgument("test function '" + name + "' is bivariate; got n=" + std::to_string(*n));
  }
  if (name == "booth") {
    return fixed(name, "Booth function", "(x1 + 2*x2 - 7)^2 + (2*x1 + x2 - 5)^2",
                 Domain::cube(2, -10, 10), {{1.0, 3.0}});
  }
  if (name == "matyas") {
    return fixed(name, "Matyas function", "0.26*(x1^2 + x2^2) - 0.48*x1*x2",
                 Domain::cube(2, -10, 10), {{0.0, 0.0}});
  }
  if (name == "three-hump-camel") {
    return fixed(name, "Three-hump camel function",
                 "2*x1^2 - 1.05*x1^4 + x1^6/6 + x1*x2 + x2^2", Domain::cube(2, -5, 5),
                 {{0.0, 0.0}});
  }
  if (name == "motzkin") {
    return fixed(name, "Motzkin polynomial", "x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1",
                 Domain::cube(2, -2, 2), sign_orbit(1.0));
  }
  if (name == "matyas-modified-s") {
    return fixed(name, "Matyas function (simplex)",
                 "0.26*((20*x1 - 10)^2 + (20*x2 - 10)^2) - 0.48*(20*x1 - 10)*(20*x2 - 10)",
                 Domain::simplex(2), {{0.5, 0.5}});
  }
  if (name == "three-hump-camel-modified-s") {
    return fixed(name, "Three-hump camel function (simplex)",
                 "2*(10*x1 - 5)^2 - 1.05*(10*x1 - 5)^4 + (10*x1 - 5)^6/6 + "
                 "(10*x1 - 5)*(10*x2 - 5) + (10*x2 - 5)^2",
                 Domain::simplex(2), {{0.5, 0.5}});
  }
  if (name == "matyas-modified-b") {
    return fixed(name, "Matyas function (ball)",
                 "0.26*((20*x1^2 - 10)^2 + (20*x2^2 - 10)^2) - 0.48*(20*x1^2 - 10)*(20*x2^2 - 10)",
                 Domain::ball(2), sign_orbit(kHalfSqrt2));
  }
  if (name == "three-hump-camel-modified-b") {
    return fixed(name, "Three-hump camel function (ball)",
                 "2*(10*x1^2 - 5)^2 - 1.05*(10*x1^2 - 5)^4 + (10*x1^2 - 5)^6/6 + "
                 "(10*x1^2 - 5)*(10*x2^2 - 5) + (10*x2^2 - 5)^2",
                 Domain::ball(2), sign_orbit(kHalfSqrt2));
  }
  throw InvalidArgument("unknown test function '" + name + "'");
}

}  // namespace sosbound::testfns
