#include "sosbound/serialize.hpp"

#include "sosbound/errors.hpp"

namespace sosbound {

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  if (j.is_number_float()) {
    try {
      return parse_rational(j.dump());
    } catch (const InvalidArgument&) {
      return rational_from_double(j.get<double>());
    }
  }
  throw InvalidArgument("expected a rational string or a number, got " + j.dump());
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string("missing JSON field '") + key + "'");
  }
  return j.at(key);
}

std::size_t positive_dimension(const json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw InvalidArgument("dimension must be a positive integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

json polynomial_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [alpha, c] : p.terms()) {
    terms.push_back({{"exp", std::vector<int>(alpha.exponents().begin(), alpha.exponents().end())},
                     {"coef", to_string(c)}});
  }
  return {{"n", p.n_vars()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const json& j) {
  const std::size_t n = positive_dimension(require(j, "n"));
  Polynomial::TermMap terms;
  for (const json& t : require(j, "terms")) {
    const auto exps = require(t, "exp").get<std::vector<int>>();
    if (exps.size() != n) throw DimensionError("term exponent length does not match n");
    for (int e : exps) {
      if (e < 0) throw InvalidArgument("exponents must be nonnegative");
    }
    const Rational c = rational_from_json(require(t, "coef"));
    auto [it, inserted] = terms.try_emplace(MultiIndex(exps), c);
    if (!inserted) it->second += c;
  }
  return Polynomial(n, std::move(terms));
}

json domain_to_json(const Domain& dom) {
  if (dom.kind() != DomainKind::box) return {{"kind", to_string(dom.kind())}, {"n", dom.n()}};
  json bounds = json::array();
  for (const auto& [lo, hi] : dom.bounds()) bounds.push_back({to_string(lo), to_string(hi)});
  return {{"kind", "box"}, {"bounds", bounds}};
}

Domain domain_from_json(const json& j) {
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "box") {
    std::vector<Domain::Interval> bounds;
    for (const json& b : require(j, "bounds")) {
      if (!b.is_array() || b.size() != 2) throw InvalidArgument("box bounds must be [lo, hi] pairs");
      bounds.emplace_back(rational_from_json(b[0]), rational_from_json(b[1]));
    }
    return Domain::box(std::move(bounds));
  }
  if (kind == "simplex") return Domain::simplex(positive_dimension(require(j, "n")));
  if (kind == "ball") return Domain::ball(positive_dimension(require(j, "n")));
  throw InvalidArgument("unknown domain kind '" + kind + "'");
}

json to_json(const BoundResult& result) {
  return {{"r", result.r},
          {"value", result.value},
          {"cond_B", result.cond_B},
          {"residual", result.residual},
          {"eigvec", result.eigvec},
          {"density", polynomial_to_json(result.density)}};
}

json to_json(const GeomParams& geom) {
  return {{"D", geom.D},         {"w_min", geom.w_min}, {"eta", geom.eta},
          {"eps_K", geom.eps_K}, {"r_K", geom.r_K},     {"gamma_n", geom.gamma_n}};
}

json to_json(const CertificateReport& report) {
  return {{"a", report.a},
          {"r", report.r},
          {"n", report.n},
          {"sigma", report.sigma},
          {"eps", report.eps},
          {"eps_formula", report.eps_formula},
          {"eps_capped", report.eps_capped},
          {"C_Ka", report.C_Ka},
          {"C_Ka_stderr", report.C_Ka_stderr},
          {"c_rKa", report.c_rKa},
          {"f_rKa", report.f_rKa},
          {"f_min", report.f_min},
          {"M_f", report.M_f},
          {"zeta", report.zeta},
          {"rhs", report.rhs},
          {"geom", to_json(report.geom)},
          {"holds", to_string(report.holds)}};
}

json to_json(const testfns::TestCase& tc) {
  return {{"name", tc.name},
          {"title", tc.title},
          {"n", tc.n},
          {"source", tc.source},
          {"domain", domain_to_json(tc.domain)},
          {"f_min", tc.f_min},
          {"minimizers", tc.minimizers}};
}

json catalog_json() {
  json entries = json::array();
  for (const std::string& name : testfns::list()) {
    if (!testfns::is_parametric(name)) {
      entries.push_back(to_json(testfns::get(name)));
      continue;
    }
    // Instantiate at n = 2 and describe how the entry scales with n.
    const testfns::TestCase tc = testfns::get(name, 2);
    const auto& [lo, hi] = tc.domain.bounds().front();
    entries.push_back({{"name", tc.name},
                       {"title", tc.title},
                       {"n", nullptr},
                       {"example_n", 2},
                       {"source_example", tc.source},
                       {"domain", {{"kind", "box"}, {"interval", {to_string(lo), to_string(hi)}}}},
                       {"f_min_per_n", name == "styblinski-tang" ? tc.f_min / 2.0 : 0.0},
                       {"minimizer_coordinate", tc.minimizers.front().front()}});
  }
  return {{"functions", entries}};
}

}  // namespace sosbound
