#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>

#include "sosbound/bound.hpp"
#include "sosbound/certificate.hpp"
#include "sosbound/errors.hpp"
#include "sosbound/sampler.hpp"
#include "sosbound/serialize.hpp"
#include "sosbound/testfns.hpp"

namespace sosbound::cli {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Problem {
  std::string label;
  Polynomial f;
  Domain domain;
  std::optional<double> f_min;
  std::vector<std::vector<double>> minimizers;
};

std::string fmt(double v, int digits = 10) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

Problem resolve(const RunConfig& cfg) {
  const bool has_fn = !cfg.fn.empty();
  const bool has_poly = !cfg.poly.empty();
  if (has_fn == has_poly) throw ConfigError("give exactly one of --fn or --poly");
  if (has_fn) {
    if (!cfg.domain.empty()) throw ConfigError("--domain only applies to --poly");
    const testfns::TestCase tc = testfns::get(cfg.fn, cfg.n);
    return {tc.name, tc.polynomial(), tc.domain, tc.f_min, tc.minimizers};
  }
  if (cfg.domain.empty()) throw ConfigError("--poly needs --domain");
  json dj;
  try {
    dj = json::parse(cfg.domain);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("--domain is not valid JSON: ") + e.what());
  }
  Domain dom = domain_from_json(dj);
  if (cfg.n && *cfg.n != dom.n()) throw ConfigError("--n does not match the domain dimension");
  return {"poly", parse_polynomial(cfg.poly, dom.n()), std::move(dom), cfg.f_min, {}};
}

BoundOptions bound_options(const RunConfig& cfg) {
  BoundOptions opts;
  opts.rescale = cfg.rescale;
  if (cfg.precision == "auto") {
    opts.precision = Precision::automatic;
  } else if (cfg.precision == "extended") {
    opts.precision = Precision::extended;
  } else if (cfg.precision == "double") {
    opts.precision = Precision::standard;
  } else {
    throw ConfigError("--precision must be auto, extended or double");
  }
  return opts;
}

// Writes to --out when given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_bound(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Problem prob = resolve(cfg);
  const BoundOptions opts = bound_options(cfg);
  json rows = json::array();
  bool conditioning_failed = false;
  for (int r = cfg.r_first; r <= cfg.r_last; ++r) {
    const auto start = std::chrono::steady_clock::now();
    json row{{"r", r}};
    try {
      const BoundResult res = compute_bound(prob.f, prob.domain, r, opts);
      row["value"] = res.value;
      row["cond_B"] = res.cond_B;
      row["residual"] = res.residual;
      row["status"] = "ok";
    } catch (const ConditioningError& e) {
      conditioning_failed = true;
      row["value"] = nullptr;
      row["cond_B"] = e.cond_b();
      row["residual"] = nullptr;
      row["status"] = "conditioning";
      err << "r=" << r << ": " << e.what() << '\n';
    }
    row["seconds"] = seconds_since(start);
    rows.push_back(std::move(row));
  }

  Sink sink(cfg.out, out);
  if (cfg.json) {
    *sink << json{{"function", prob.label},
                  {"domain", domain_to_json(prob.domain)},
                  {"rescale", cfg.rescale},
                  {"rows", rows}}
                 .dump(2)
          << '\n';
  } else {
    *sink << "r,value,cond_B,residual,seconds,status\n";
    for (const json& row : rows) {
      const auto num = [&](const char* key) {
        return row[key].is_null() ? std::string() : fmt(row[key].get<double>());
      };
      *sink << row["r"].get<int>() << ',' << num("value") << ',' << num("cond_B") << ','
            << num("residual") << ',' << fmt(row["seconds"].get<double>(), 4) << ','
            << row["status"].get<std::string>() << '\n';
    }
  }
  return conditioning_failed ? kConditioningFailure : kOk;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.r_first != cfg.r_last) throw ConfigError("sample takes a single order --r");
  if (cfg.count < 1) throw ConfigError("--count must be at least 1");
  const Problem prob = resolve(cfg);
  if (prob.domain.kind() == DomainKind::ball) {
    throw UnsupportedDomain("sampling from the ball is not supported");
  }
  if (cfg.eps && !(*cfg.eps > 0)) throw ConfigError("--eps must be positive");
  if (cfg.eps && !prob.f_min) throw ConfigError("--eps needs a known minimum; pass --fmin");

  const BoundResult res = compute_bound(prob.f, prob.domain, cfg.r_first, bound_options(cfg));
  const ConditionalChain chain = build_chain(res.density, prob.domain);
  const SampleBatch batch = sample(chain, cfg.count, cfg.seed, prob.f);
  const SampleSummary s = summarize(batch.values);

  {
    Sink sink(cfg.out, out);
    std::ostream& os = *sink;
    for (std::size_t i = 1; i <= prob.domain.n(); ++i) os << 'x' << i << ',';
    os << "f\n";
    for (std::size_t k = 0; k < batch.points.size(); ++k) {
      for (double x : batch.points[k]) os << fmt(x, 17) << ',';
      os << fmt(batch.values[k], 17) << '\n';
    }
  }

  json summary{{"function", prob.label},
               {"r", cfg.r_first},
               {"bound", res.value},
               {"count", cfg.count},
               {"seed", cfg.seed},
               {"mean", s.mean},
               {"variance", s.variance},
               {"min", s.min},
               {"stderr", s.stderr_mean}};
  if (cfg.eps) {
    const double freq = markov_check(prob.f, batch, res.value, *prob.f_min, *cfg.eps);
    summary["markov"] = {{"eps", *cfg.eps}, {"frequency", freq}, {"cap", 1.0 / (1.0 + *cfg.eps)}};
  }
  if (!cfg.out.empty()) {
    const std::string sidecar = cfg.out + ".json";
    std::ofstream side(sidecar, std::ios::binary);
    if (!side) throw ConfigError("cannot open sidecar file '" + sidecar + "'");
    json meta = summary;
    meta["domain"] = domain_to_json(prob.domain);
    side << meta.dump(2) << '\n';
  }

  std::ostream& report = cfg.out.empty() ? err : out;
  if (cfg.json) {
    report << summary.dump(2) << '\n';
  } else {
    report << "r,bound,count,mean,variance,min,stderr";
    if (cfg.eps) report << ",eps,markov_frequency,markov_cap";
    report << '\n'
           << cfg.r_first << ',' << fmt(res.value) << ',' << cfg.count << ',' << fmt(s.mean) << ','
           << fmt(s.variance) << ',' << fmt(s.min) << ',' << fmt(s.stderr_mean);
    if (cfg.eps) {
      report << ',' << fmt(*cfg.eps) << ',' << fmt(summary["markov"]["frequency"].get<double>())
             << ',' << fmt(1.0 / (1.0 + *cfg.eps));
    }
    report << '\n';
  }
  return kOk;
}

int cmd_certificate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Problem prob = resolve(cfg);
  std::vector<double> a = cfg.a;
  if (a.empty()) {
    if (prob.minimizers.empty()) throw ConfigError("--a is required for --poly");
    a = prob.minimizers.front();
  }
  if (a.size() != prob.domain.n()) throw ConfigError("--a has the wrong number of coordinates");
  const std::optional<double> f_min = cfg.f_min ? cfg.f_min : prob.f_min;
  if (!f_min) throw ConfigError("--fmin is required for --poly");

  CertificateOptions copts;
  copts.mc_samples = cfg.mc_samples;
  copts.seed = cfg.seed;
  const BoundOptions bopts = bound_options(cfg);

  json reports = json::array();
  std::vector<std::pair<double, double>> gaps;
  for (int r = cfg.r_first; r <= cfg.r_last; ++r) {
    const CertificateReport rep = certificate(prob.f, prob.domain, a, r, *f_min, copts);
    json j = to_json(rep);
    try {
      j["bound_2r"] = compute_bound(prob.f, prob.domain, 2 * r, bopts).value;
    } catch (const ConditioningError& e) {
      j["bound_2r"] = nullptr;
      err << "r=" << r << ": order-" << 2 * r << " bound unavailable: " << e.what() << '\n';
    }
    if (rep.f_rKa - *f_min > 0) gaps.emplace_back(std::log(r), std::log(rep.f_rKa - *f_min));
    reports.push_back(std::move(j));
  }
  if (gaps.size() >= 2) {
    // Least-squares slope of log(f_rKa - f_min) against log r.
    double mx = 0, my = 0;
    for (const auto& [x, y] : gaps) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(gaps.size());
    my /= static_cast<double>(gaps.size());
    double sxy = 0, sxx = 0;
    for (const auto& [x, y] : gaps) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    err << "log-log slope of f_rKa - f_min against r: " << fmt(sxy / sxx, 4) << '\n';
  }

  Sink sink(cfg.out, out);
  if (cfg.json) {
    *sink << (reports.size() == 1 ? reports.front() : reports).dump(2) << '\n';
  } else {
    *sink << "r,eps,sigma,C_Ka,c_rKa,f_rKa,bound_2r,M_f,zeta,rhs,r_K,holds\n";
    for (const json& j : reports) {
      *sink << j["r"].get<int>() << ',' << fmt(j["eps"].get<double>()) << ','
            << fmt(j["sigma"].get<double>()) << ',' << fmt(j["C_Ka"].get<double>()) << ','
            << fmt(j["c_rKa"].get<double>()) << ',' << fmt(j["f_rKa"].get<double>()) << ','
            << (j["bound_2r"].is_null() ? std::string() : fmt(j["bound_2r"].get<double>())) << ','
            << fmt(j["M_f"].get<double>()) << ',' << fmt(j["zeta"].get<double>()) << ','
            << fmt(j["rhs"].get<double>()) << ',' << fmt(j["geom"]["r_K"].get<double>()) << ','
            << j["holds"].get<std::string>() << '\n';
    }
  }
  return kOk;
}

struct BenchCell {
  std::string table;
  std::string function;
  std::size_t n;
  int r;
  double golden;
  std::string tol_kind;
  double tol;
  bool asserted;
  std::optional<double> value;
  double seconds = 0.0;
  std::string status;
};

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string path = cfg.golden.empty() ? SOSBOUND_DEFAULT_GOLDEN : cfg.golden;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read golden file '" + path + "'");
  json golden;
  try {
    golden = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("golden file is not valid JSON: " + std::string(e.what()));
  }

  std::vector<BenchCell> cells;
  for (const json& block : golden.at("blocks")) {
    const std::string table = block.at("table").get<std::string>();
    if (!cfg.tables.empty() &&
        std::find(cfg.tables.begin(), cfg.tables.end(), table) == cfg.tables.end()) {
      continue;
    }
    const std::string fn = block.at("function").get<std::string>();
    const std::size_t n = block.at("n").get<std::size_t>();
    const int asserted_max = block.at("asserted_max_r").get<int>();
    const int stretch_min = block.value("stretch_min_r", std::numeric_limits<int>::max());
    const std::string kind = block.at("tolerance").at("kind").get<std::string>();
    const double tol = block.at("tolerance").at("value").get<double>();

    std::vector<BenchCell> block_cells;
    for (const json& c : block.at("cells")) {
      const int r = c.at("r").get<int>();
      if (r >= stretch_min && !cfg.stretch) continue;
      block_cells.push_back({table, fn, n, r, c.at("value").get<double>(), kind, tol,
                             r <= asserted_max, std::nullopt, 0.0, ""});
    }
    if (block_cells.empty()) continue;

    const testfns::TestCase tc = testfns::get(fn, testfns::is_parametric(fn) ? std::optional(n) : std::nullopt);
    const Polynomial f = tc.polynomial();
    BoundOptions opts = bound_options(cfg);
    opts.rescale = cfg.rescale;
    bool stopped = false;
    for (BenchCell& cell : block_cells) {
      const auto start = std::chrono::steady_clock::now();
      if (!stopped) {
        try {
          cell.value = compute_bound(f, tc.domain, cell.r, opts).value;
        } catch (const ConditioningError& e) {
          stopped = true;
          err << table << ' ' << fn << " r=" << cell.r << ": " << e.what() << '\n';
        }
      }
      cell.seconds = seconds_since(start);
      if (!cell.value) {
        cell.status = cell.asserted ? "fail" : "unavailable";
      } else {
        const double delta = std::abs(*cell.value - cell.golden);
        const double measure = kind == "rel" ? delta / std::abs(cell.golden) : delta;
        cell.status = !cell.asserted ? "reported" : measure <= tol ? "pass" : "fail";
      }
      cells.push_back(cell);
    }
  }

  Sink sink(cfg.out, out);
  json rows = json::array();
  if (!cfg.json) {
    *sink << "table,function,n,r,value,golden,abs_delta,rel_delta,tolerance,asserted,status,seconds\n";
  }
  std::map<std::string, std::pair<int, int>> tally;  // table -> (passed, asserted)
  bool mismatch = false;
  for (const BenchCell& c : cells) {
    const double abs_delta = c.value ? std::abs(*c.value - c.golden) : NAN;
    const double rel_delta = c.value ? abs_delta / std::abs(c.golden) : NAN;
    if (c.asserted) {
      auto& t = tally[c.table];
      ++t.second;
      if (c.status == "pass") ++t.first;
      if (c.status != "pass") mismatch = true;
    }
    if (cfg.json) {
      rows.push_back({{"table", c.table},
                      {"function", c.function},
                      {"n", c.n},
                      {"r", c.r},
                      {"value", c.value ? json(*c.value) : json(nullptr)},
                      {"golden", c.golden},
                      {"abs_delta", c.value ? json(abs_delta) : json(nullptr)},
                      {"rel_delta", c.value ? json(rel_delta) : json(nullptr)},
                      {"tolerance", {{"kind", c.tol_kind}, {"value", c.tol}}},
                      {"asserted", c.asserted},
                      {"status", c.status},
                      {"seconds", c.seconds}});
    } else {
      *sink << c.table << ',' << c.function << ',' << c.n << ',' << c.r << ','
            << (c.value ? fmt(*c.value) : "") << ',' << fmt(c.golden) << ','
            << (c.value ? fmt(abs_delta, 4) : "") << ',' << (c.value ? fmt(rel_delta, 4) : "")
            << ',' << c.tol_kind << ':' << fmt(c.tol, 3) << ',' << (c.asserted ? 1 : 0) << ','
            << c.status << ',' << fmt(c.seconds, 4) << '\n';
    }
  }
  if (cfg.json) *sink << json{{"cells", rows}}.dump(2) << '\n';
  for (const auto& [table, t] : tally) {
    err << table << ": " << t.first << '/' << t.second << " asserted cells within tolerance\n";
  }
  return mismatch ? kGoldenMismatch : kOk;
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.out, out);
  *sink << catalog_json().dump(2) << '\n';
  return kOk;
}

void add_function_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--fn", cfg.fn, "Catalog function name");
  app->add_option("--poly", cfg.poly, "Inline polynomial, e.g. \"x1^2 - x2\"");
  app->add_option("--domain", cfg.domain, "Domain JSON for --poly");
  app->add_option("--n", cfg.n, "Dimension for n-variate catalog functions");
  app->add_option("--fmin", cfg.f_min, "Known minimum of f over the domain");
  app->add_option("--precision", cfg.precision, "auto, extended or double")
      ->capture_default_str();
  app->add_flag("--rescale", cfg.rescale, "Map a box to [-1,1]^n before solving");
  app->add_flag("--json", cfg.json, "Emit JSON instead of CSV");
  app->add_option("--out", cfg.out, "Output file (default: standard output)");
}

}  // namespace

std::pair<int, int> parse_r_range(const std::string& text) {
  const auto to_int = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6) {
      throw ConfigError("--r must be an integer or a range a..b, got '" + text + "'");
    }
    return std::stoi(s);
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int a = to_int(text.substr(0, dots));
    const int b = to_int(text.substr(dots + 2));
    if (a > b) throw ConfigError("--r range is empty: '" + text + "'");
    return {a, b};
  }
  const int r = to_int(text);
  return {r, r};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string r_text = "1";

  CLI::App app{"Measure-based upper bounds for polynomial minimization"};
  app.require_subcommand(1);

  CLI::App* bound = app.add_subcommand("bound", "Compute upper bounds for a range of orders");
  add_function_options(bound, cfg);
  bound->add_option("--r", r_text, "Order r or range a..b")->capture_default_str();

  CLI::App* samp = app.add_subcommand("sample", "Sample points from the optimal density");
  add_function_options(samp, cfg);
  samp->add_option("--r", r_text, "Order r")->capture_default_str();
  samp->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  samp->add_option("--count", cfg.count, "Number of samples")->capture_default_str();
  samp->add_option("--eps", cfg.eps, "Report the exceedance frequency for this eps");

  CLI::App* cert = app.add_subcommand("certificate", "Evaluate the convergence-rate certificate");
  add_function_options(cert, cfg);
  cert->add_option("--r", r_text, "Order r or range a..b")->capture_default_str();
  cert->add_option("--a", cfg.a, "Minimizer, comma separated")->delimiter(',');
  cert->add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
  cert->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo sample count")
      ->capture_default_str();

  CLI::App* bench = app.add_subcommand("bench", "Regenerate the reference tables");
  bench->add_option("--golden", cfg.golden, "Golden values JSON");
  bench->add_flag("--stretch", cfg.stretch, "Also run the large stretch cells");
  bench->add_option("--tables", cfg.tables, "Only these tables, e.g. table2,table5")
      ->delimiter(',');
  bench->add_option("--precision", cfg.precision, "auto, extended or double")
      ->capture_default_str();
  bench->add_flag("--rescale", cfg.rescale, "Map boxes to [-1,1]^n before solving");
  bench->add_flag("--json", cfg.json, "Emit JSON instead of CSV");
  bench->add_option("--out", cfg.out, "Output file (default: standard output)");

  CLI::App* catalog = app.add_subcommand("catalog", "Print the test function catalog as JSON");
  catalog->add_option("--out", cfg.out, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    std::tie(cfg.r_first, cfg.r_last) = parse_r_range(r_text);
    if (cfg.r_first < 1) throw ConfigError("--r must be at least 1");
    if (bound->parsed()) return cmd_bound(cfg, out, err);
    if (samp->parsed()) return cmd_sample(cfg, out, err);
    if (cert->parsed()) return cmd_certificate(cfg, out, err);
    if (catalog->parsed()) return cmd_catalog(cfg, out);
    return cmd_bench(cfg, out, err);
  } catch (const ConditioningError& e) {
    err << "error: " << e.what() << '\n';
    return kConditioningFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace sosbound::cli
