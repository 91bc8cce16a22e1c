#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "generators.hpp"
#include "sosbound/errors.hpp"
#include "sosbound/serialize.hpp"

using namespace sosbound;

TEST(PolynomialJson, RoundTrip) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = testgen::random_polynomial(rng, 1 + trial % 3, 6);
    EXPECT_EQ(polynomial_from_json(polynomial_to_json(p)), p);
    EXPECT_EQ(polynomial_from_json(json::parse(polynomial_to_json(p).dump())), p);
  }
}

TEST(PolynomialJson, AcceptsDecimalsAndIntegers) {
  const json j = json::parse(R"({"n":2,"terms":[{"exp":[1,0],"coef":"1.05"},{"exp":[0,2],"coef":-3}]})");
  EXPECT_EQ(polynomial_from_json(j), parse_polynomial("1.05*x1 - 3*x2^2", 2));
}

TEST(PolynomialJson, Errors) {
  EXPECT_THROW(polynomial_from_json(json::parse(R"({"n":2,"terms":[{"exp":[1],"coef":"1"}]})")),
               DimensionError);
  EXPECT_THROW(polynomial_from_json(json::parse(R"({"n":1,"terms":[{"exp":[-1],"coef":"1"}]})")),
               InvalidArgument);
  EXPECT_THROW(polynomial_from_json(json::parse(R"({"terms":[]})")), InvalidArgument);
}

TEST(DomainJson, RoundTrip) {
  for (const Domain& d : {Domain::box({{Rational(-256, 125), Rational(1, 3)}, {0, 7}}),
                          Domain::simplex(4), Domain::ball(3)}) {
    EXPECT_EQ(domain_from_json(json::parse(domain_to_json(d).dump())), d);
  }
}

TEST(DomainJson, InputForms) {
  EXPECT_EQ(domain_from_json(json::parse(R"({"kind":"box","bounds":[["0","1"]]})")),
            Domain::cube(1, 0, 1));
  EXPECT_EQ(domain_from_json(json::parse(R"({"kind":"box","bounds":[[-2.048, 2.048]]})")),
            Domain::cube(1, Rational(-256, 125), Rational(256, 125)));
  EXPECT_THROW(domain_from_json(json::parse(R"({"kind":"torus","n":2})")), InvalidArgument);
  EXPECT_THROW(domain_from_json(json::parse(R"({"kind":"ball","n":0})")), InvalidArgument);
  EXPECT_THROW(domain_from_json(json::parse(R"({"kind":"box","bounds":[[1]]})")),
               InvalidArgument);
}

TEST(ReportJson, CertificateFields) {
  CertificateReport rep;
  rep.a = {0.5};
  rep.r = 3;
  rep.holds = HoldStatus::precondition;
  const json j = to_json(rep);
  for (const char* key : {"a", "r", "n", "sigma", "eps", "C_Ka", "c_rKa", "f_rKa", "M_f", "zeta",
                          "rhs", "geom", "holds"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["holds"], "false-precondition");
  EXPECT_TRUE(j["geom"].contains("r_K"));
}

TEST(ReportJson, BoundResultDensity) {
  BoundResult res;
  res.r = 2;
  res.value = 1.5;
  res.eigvec = {1.0, 0.0};
  res.density = parse_polynomial("x1^2", 1);
  const json j = to_json(res);
  EXPECT_EQ(j["r"], 2);
  EXPECT_EQ(polynomial_from_json(j["density"]), res.density);
}

TEST(Catalog, ShippedFileIsCurrent) {
  std::ifstream in(std::string(SOSBOUND_DATA_DIR) + "/catalog.json");
  ASSERT_TRUE(in) << "missing data/catalog.json";
  EXPECT_EQ(json::parse(in), catalog_json());
}

TEST(Catalog, Shape) {
  const json c = catalog_json();
  ASSERT_EQ(c["functions"].size(), 10u);
  for (const json& e : c["functions"]) {
    if (e["n"].is_null()) {
      EXPECT_TRUE(e.contains("f_min_per_n"));
    } else {
      const Domain d = domain_from_json(e["domain"]);
      EXPECT_EQ(parse_polynomial(e["source"].get<std::string>(), d.n()).n_vars(), d.n());
    }
  }
}
