// besselquad: command-line front end.
//
// Exit codes: 0 success, 1 failed verification, 2 usage or domain error,
// 3 near-degenerate scales with no fallback allowed, 4 quadrature did not
// converge.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "besselquad/besselquad.hpp"

namespace bq = besselquad;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNotConverged = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  double value = 0.0;
  double abs_error_est = 0.0;
  std::string strategy;
  std::size_t nodes = 0;
  double seconds = 0.0;
  bool converged = true;
};

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json report_json(const Report& r) {
  return {{"value", r.value},
          {"abs_error_est", r.abs_error_est},
          {"strategy", r.strategy},
          {"nodes", r.nodes},
          {"seconds", r.seconds}};
}

void emit_report(const Report& r, const std::string& format) {
  if (format == "json") {
    std::cout << report_json(r).dump() << "\n";
  } else if (format == "csv") {
    std::cout << "value,abs_error_est,strategy,nodes,seconds\n"
              << shortest(r.value) << "," << shortest(r.abs_error_est) << ","
              << csv_field(r.strategy) << "," << r.nodes << "," << shortest(r.seconds) << "\n";
  } else {
    std::cout << "value          " << shortest(r.value) << "\n"
              << "abs_error_est  " << shortest(r.abs_error_est) << "\n"
              << "strategy       " << r.strategy << "\n"
              << "nodes          " << r.nodes << "\n"
              << "seconds        " << shortest(r.seconds) << "\n";
  }
}

int emit_error(const std::string& kind, const std::string& message, int code,
               const std::string& format) {
  if (format == "json")
    std::cout << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
  else
    std::cerr << "error: " << kind << ": " << message << "\n";
  return code;
}

struct Options {
  int n = 0;
  int k = 0;
  int l = 0;
  double alpha = 1.0;
  double beta = 1.0;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> tol;
  std::string strategy = "auto";
  std::string format = "plain";
  std::string samples;
  int degree = 3;
  bool product = false;
  std::string config;
  std::string suite = "appendix";
};

double default_tolerance() {
  const char* env = std::getenv("BESSELQUAD_TOL");
  if (!env || !*env) return 1e-10;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0))
    throw UsageError("BESSELQUAD_TOL must be a positive number, got '" + std::string(env) + "'");
  return v;
}

bq::DefiniteOptions definite_options(const Options& o) {
  bq::DefiniteOptions d;
  d.tol = o.tol ? *o.tol : default_tolerance();
  if (!(d.tol > 0.0)) throw UsageError("--tol must be > 0");
  if (o.strategy == "recursion")
    d.mode = bq::StrategyMode::Recursion;
  else if (o.strategy == "quadrature")
    d.mode = bq::StrategyMode::Quadrature;
  else
    d.mode = bq::StrategyMode::Auto;
  return d;
}

void check_interval(double a, double b) {
  if (!(a < b)) throw UsageError("require a < b");
  if (a < 0.0) throw UsageError("require a >= 0");
}

Report evaluate(const bq::IntegralSpec& spec, double a, double b,
                const bq::DefiniteOptions& opts) {
  check_interval(a, b);
  const auto t0 = std::chrono::steady_clock::now();
  const bq::DefiniteResult r = bq::definite_integral(spec, a, b, opts);
  Report out;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.value = r.value;
  out.abs_error_est = r.abs_error_est;
  out.strategy = r.strategy.label();
  out.nodes = r.evaluations;
  out.converged = r.converged;
  return out;
}

bq::IntegralSpec spec_for(const std::string& family, int n, int k, int l, double alpha,
                          double beta) {
  if (family == "single") return bq::IntegralSpec::single(n, l, alpha);
  if (family == "squared") return bq::IntegralSpec::squared(n, l, alpha);
  if (family == "product-same") return bq::IntegralSpec::same_order(n, l, alpha, beta);
  if (family == "product-diff") return bq::IntegralSpec::mixed(n, k, l, alpha, beta);
  throw UsageError("unknown family '" + family + "'");
}

// Maps library exceptions onto exit codes; the callable returns an exit code.
template <class F>
int guarded(const std::string& format, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    return emit_error("UsageError", e.what(), kExitUsage, format);
  } catch (const bq::DomainError& e) {
    return emit_error("DomainError", e.what(), kExitUsage, format);
  } catch (const bq::NearDegenerate& e) {
    return emit_error("NearDegenerate", std::string(e.what()) +
                                            " (use --strategy auto or quadrature to fall back)",
                      kExitDegenerate, format);
  } catch (const bq::NotConverged& e) {
    return emit_error("NotConverged", e.what(), kExitNotConverged, format);
  } catch (const std::exception& e) {
    return emit_error("UsageError", e.what(), kExitUsage, format);
  }
}

// A non-converged result is still printed, flagged, with exit code 4.
int finish(const Report& r, const std::string& format) {
  if (r.converged) {
    emit_report(r, format);
    return 0;
  }
  const std::string message = "quadrature error estimate above tolerance";
  if (format == "json") {
    json j = report_json(r);
    j["error"] = "NotConverged";
    j["message"] = message;
    j["exit_code"] = kExitNotConverged;
    std::cout << j.dump() << "\n";
    return kExitNotConverged;
  }
  emit_report(r, format);
  return emit_error("NotConverged", message, kExitNotConverged, format);
}

int run_family(const std::string& family, const Options& o) {
  return guarded(o.format, [&] {
    const bq::DefiniteOptions opts = definite_options(o);
    return finish(evaluate(spec_for(family, o.n, o.k, o.l, o.alpha, o.beta), o.a, o.b, opts),
                  o.format);
  });
}

int run_weighted(const Options& o, bool beta_given) {
  return guarded(o.format, [&] {
    const bq::DefiniteOptions opts = definite_options(o);
    check_interval(o.a, o.b);
    std::ifstream in(o.samples);
    if (!in) throw UsageError("cannot open samples file '" + o.samples + "'");
    const auto f = bq::build_interpolant(bq::read_samples_csv(in), o.degree);
    const auto t0 = std::chrono::steady_clock::now();
    bq::WeightedResult w;
    if (o.product)
      w = bq::integrate_product_report(f, o.k, o.l, o.alpha, beta_given ? o.beta : o.alpha, o.a,
                                       o.b, opts);
    else
      w = bq::integrate_single_report(f, o.l, o.alpha, o.a, o.b, opts);
    Report r;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.value = w.value;
    r.abs_error_est = w.abs_error_est;
    r.strategy = w.strategy_label();
    r.nodes = w.evaluations;
    return finish(r, o.format);
  });
}

// Grid config (JSON):
//   {"family": "single|squared|product-same|product-diff",
//    "n": [...], "k": [...], "l": [...], "alpha": [...], "beta": [...],
//    "a": 5.0, "b": 50.0}
// Missing lists default to [0] for n, k, l and [1.0] for alpha, beta.
struct Cell {
  int n, k, l;
  double alpha, beta;
};

struct CellResult {
  Report report;
  int code = 0;
  std::string error;
};

int run_table(const Options& o) {
  return guarded(o.format, [&] {
    const bq::DefiniteOptions opts = definite_options(o);
    std::ifstream in(o.config);
    if (!in) throw UsageError("cannot open config file '" + o.config + "'");
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(std::string("config: ") + e.what());
    }
    if (!cfg.contains("family") || !cfg.contains("a") || !cfg.contains("b"))
      throw UsageError("config needs \"family\", \"a\" and \"b\"");
    const std::string family = cfg["family"].get<std::string>();
    const double a = cfg["a"].get<double>(), b = cfg["b"].get<double>();
    check_interval(a, b);
    auto ints = [&](const char* key) {
      return cfg.contains(key) ? cfg[key].get<std::vector<int>>() : std::vector<int>{0};
    };
    auto reals = [&](const char* key) {
      return cfg.contains(key) ? cfg[key].get<std::vector<double>>() : std::vector<double>{1.0};
    };
    std::vector<Cell> cells;
    for (int n : ints("n"))
      for (int k : ints("k"))
        for (int l : ints("l"))
          for (double al : reals("alpha"))
            for (double be : reals("beta")) cells.push_back({n, k, l, al, be});
    spec_for(family, 0, 0, 0, 1.0, 1.0);  // reject unknown families before running

    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) {
        const Cell& c = cells[i];
        CellResult& r = results[i];
        try {
          r.report = evaluate(spec_for(family, c.n, c.k, c.l, c.alpha, c.beta), a, b, opts);
          if (!r.report.converged) {
            r.code = kExitNotConverged;
            r.error = "NotConverged";
          }
        } catch (const bq::DomainError& e) {
          r.code = kExitUsage;
          r.error = std::string("DomainError: ") + e.what();
        } catch (const bq::NearDegenerate& e) {
          r.code = kExitDegenerate;
          r.error = std::string("NearDegenerate: ") + e.what();
        } catch (const bq::NotConverged& e) {
          r.code = kExitNotConverged;
          r.error = std::string("NotConverged: ") + e.what();
        }
      }
    };
    const unsigned threads =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(cells.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int code = 0;
    json rows = json::array();
    if (o.format == "csv")
      std::cout << "family,n,k,l,alpha,beta,a,b,value,abs_error_est,strategy,nodes,seconds,error\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Cell& c = cells[i];
      const CellResult& r = results[i];
      code = std::max(code, r.code);
      if (o.format == "json") {
        json row = report_json(r.report);
        row["family"] = family;
        row["n"] = c.n;
        row["k"] = c.k;
        row["l"] = c.l;
        row["alpha"] = c.alpha;
        row["beta"] = c.beta;
        row["a"] = a;
        row["b"] = b;
        if (r.code) row["error"] = r.error;
        rows.push_back(row);
      } else if (o.format == "csv") {
        std::cout << family << "," << c.n << "," << c.k << "," << c.l << "," << shortest(c.alpha)
                  << "," << shortest(c.beta) << "," << shortest(a) << "," << shortest(b) << ","
                  << shortest(r.report.value) << "," << shortest(r.report.abs_error_est) << ","
                  << csv_field(r.report.strategy) << "," << r.report.nodes << ","
                  << shortest(r.report.seconds) << "," << csv_field(r.error) << "\n";
      } else {
        std::cout << family << " n=" << c.n << " k=" << c.k << " l=" << c.l
                  << " alpha=" << shortest(c.alpha) << " beta=" << shortest(c.beta) << "  ";
        if (r.code)
          std::cout << r.error << "\n";
        else
          std::cout << shortest(r.report.value) << "  [" << r.report.strategy << "]\n";
      }
    }
    if (o.format == "json") std::cout << rows.dump() << "\n";
    return code;
  });
}

int run_verify(const Options& o) {
  return guarded(o.format, [&] {
    if (o.suite != "appendix") throw UsageError("unknown suite '" + o.suite + "'");
    constexpr double kLimit = 1e-8;
    bool all_pass = true;
    json rows = json::array();
    if (o.format == "csv") std::cout << "identity,n,k,l,alpha,beta,a,b,residual,pass\n";
    for (const bq::AppendixCase& c : bq::appendix_suite()) {
      const double r = bq::verify_identity(c.id, c.params, c.a, c.b);
      const bool pass = r < kLimit;
      all_pass = all_pass && pass;
      const std::string id(bq::to_string(c.id));
      const auto& p = c.params;
      if (o.format == "json") {
        rows.push_back({{"identity", id}, {"n", p.n}, {"k", p.k}, {"l", p.l},
                        {"alpha", p.alpha}, {"beta", p.beta}, {"a", c.a}, {"b", c.b},
                        {"residual", r}, {"pass", pass}});
      } else if (o.format == "csv") {
        std::cout << id << "," << p.n << "," << p.k << "," << p.l << "," << shortest(p.alpha)
                  << "," << shortest(p.beta) << "," << shortest(c.a) << "," << shortest(c.b)
                  << "," << shortest(r) << "," << (pass ? "true" : "false") << "\n";
      } else {
        std::cout << (pass ? "PASS " : "FAIL ") << id << " n=" << p.n << " k=" << p.k
                  << " l=" << p.l << " [" << shortest(c.a) << ", " << shortest(c.b)
                  << "] residual=" << shortest(r) << "\n";
      }
    }
    if (o.format == "json")
      std::cout << json{{"suite", o.suite}, {"pass", all_pass}, {"cases", rows}}.dump() << "\n";
    return all_pass ? 0 : kExitVerifyFailed;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrals of monomials times spherical Bessel functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--tol", o.tol, "Quadrature tolerance (absolute and relative)");
  app.add_option("--strategy", o.strategy, "Evaluation strategy")
      ->check(CLI::IsMember({"auto", "recursion", "quadrature"}));
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}));

  auto add_common = [&](CLI::App* sub, bool beta, bool k) {
    sub->add_option("--n", o.n, "Power of x")->required();
    if (k) sub->add_option("--k", o.k, "Order of the first Bessel function")->required();
    sub->add_option("--l", o.l, "Order")->required();
    sub->add_option("--alpha", o.alpha, "Scale")->required();
    if (beta) sub->add_option("--beta", o.beta, "Second scale")->required();
    sub->add_option("--a", o.a, "Lower limit")->required();
    sub->add_option("--b", o.b, "Upper limit")->required();
  };
  auto* single = app.add_subcommand("single", "int x^n j_l(alpha x) dx");
  add_common(single, false, false);
  auto* squared = app.add_subcommand("squared", "int x^n j_l(alpha x)^2 dx");
  add_common(squared, false, false);
  auto* same = app.add_subcommand("product-same", "int x^n j_l(alpha x) j_l(beta x) dx");
  add_common(same, true, false);
  auto* diff = app.add_subcommand("product-diff", "int x^n j_k(alpha x) j_l(beta x) dx");
  add_common(diff, true, true);

  auto* weighted = app.add_subcommand("weighted", "int f(x) j_l(alpha x) [j_k(beta x)] dx, f from CSV");
  weighted->add_option("--samples", o.samples, "CSV file with columns x,f")->required();
  weighted->add_option("--degree", o.degree, "Interpolation degree")->check(CLI::IsMember({1, 3}));
  auto* k_opt = weighted->add_option("--k", o.k, "First order; selects the product integral");
  weighted->add_option("--l", o.l, "Order")->required();
  weighted->add_option("--alpha", o.alpha, "Scale")->required();
  auto* beta_opt = weighted->add_option("--beta", o.beta, "Second scale (default alpha)");
  weighted->add_option("--a", o.a, "Lower limit")->required();
  weighted->add_option("--b", o.b, "Upper limit")->required();

  auto* table = app.add_subcommand("table", "Sweep a parameter grid from a JSON config");
  table->add_option("--config", o.config, "Grid config file")->required();

  auto* verify = app.add_subcommand("verify", "Run an identity verification suite");
  verify->add_option("--suite", o.suite, "Suite name")->check(CLI::IsMember({"appendix"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*single) return run_family("single", o);
  if (*squared) return run_family("squared", o);
  if (*same) return run_family("product-same", o);
  if (*diff) return run_family("product-diff", o);
  if (*weighted) {
    o.product = k_opt->count() > 0;
    return run_weighted(o, beta_opt->count() > 0);
  }
  if (*table) return run_table(o);
  if (*verify) return run_verify(o);
  return kExitUsage;
}
