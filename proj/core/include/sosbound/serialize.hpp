#pragma once

#include <nlohmann/json.hpp>

#include "sosbound/bound.hpp"
#include "sosbound/certificate.hpp"
#include "sosbound/moments.hpp"
#include "sosbound/polynomial.hpp"
#include "sosbound/testfns.hpp"

namespace sosbound {

using json = nlohmann::json;

/// {"n": N, "terms": [{"exp": [..], "coef": "p/q"}, ...]}
json polynomial_to_json(const Polynomial& p);
/// Accepts "coef" as a rational or decimal string, or a JSON integer.
Polynomial polynomial_from_json(const json& j);

/// {"kind":"box","bounds":[["lo","hi"],...]} | {"kind":"simplex","n":N} |
/// {"kind":"ball","n":N}. Box bounds may also be JSON numbers.
json domain_to_json(const Domain& dom);
Domain domain_from_json(const json& j);

json to_json(const BoundResult& result);
json to_json(const GeomParams& geom);
json to_json(const CertificateReport& report);
json to_json(const testfns::TestCase& tc);

/// Every catalog entry; parametric families are listed with "n": null and
/// their per-coordinate summand.
json catalog_json();

}  // namespace sosbound
