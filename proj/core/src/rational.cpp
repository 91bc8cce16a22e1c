#include "sosbound/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "sosbound/errors.hpp"

namespace sosbound {

std::string ConditioningError::format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d{std::string(den), 10};
    if (d == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw InvalidArgument("malformed decimal '" + std::string(text) + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = Rational(mpz_class(digits, 10), scale);
  } else {
    if (!all_digits(body)) {
      throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    }
    result = Rational(mpz_class(std::string(body), 10));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("non-finite value has no rational form");
  Rational q;
  mpq_set_d(q.get_mpq_t(), v);
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& base, int exponent) {
  unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  if (exponent < 0) std::swap(num, den);
  if (den == 0) throw InvalidArgument("zero raised to a negative power");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f);
}

Rational double_factorial(int k) {
  if (k <= 0) return Rational(1);
  mpz_class f;
  mpz_2fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(f);
}

}  // namespace sosbound
