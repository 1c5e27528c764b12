// Command-line driver: pmf tables, summary statistics, median/mode boundary
// sweeps, double-mode location, and the verification suites, in CSV or JSON.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "orderk/boundaries.hpp"
#include "orderk/claims.hpp"
#include "orderk/errors.hpp"
#include "orderk/formulas.hpp"
#include "orderk/harness.hpp"
#include "orderk/output.hpp"
#include "orderk/pmf.hpp"
#include "orderk/stats.hpp"

namespace {

using namespace orderk;

struct CommonFlags {
  std::string format = "csv";
  std::string out;
  bool stamp = false;
  int threads = 1;
  double tol = 0.0;  // 0 = solver default
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_flag("--stamp", f.stamp, "record a timestamp in the provenance block");
  cmd->add_option("--threads", f.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f.tol, "solver tolerance override")->check(CLI::PositiveNumber);
}

void stamp_and_write(OutputRecord& rec, const CommonFlags& f) {
  if (f.stamp) {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    rec.provenance["stamp"] = buf;
  }
  write_output(rec, f.format, f.out);
}

SolverOptions solver_options(const CommonFlags& f) {
  SolverOptions o;
  if (f.tol > 0.0) {
    o.lambda_rel_tol = f.tol;
    o.alpha_residual_tol = f.tol;
    o.beta_residual_tol = f.tol;
  }
  return o;
}

std::string join_modes(const std::vector<std::int64_t>& modes) {
  std::string s;
  for (std::size_t i = 0; i < modes.size(); ++i) s += (i ? ";" : "") + render_int(modes[i]);
  return s;
}

int cmd_pmf(int k, double lambda, std::int64_t n_max, const std::string& engine,
            const CommonFlags& flags) {
  OrderKParams params(k, lambda);
  OutputRecord rec;
  rec.command = "pmf";
  rec.params = {{"k", render_int(k)},
                {"lambda", render_double(lambda)},
                {"n_max", render_int(n_max)},
                {"engine", engine}};
  rec.provenance["engine"] = engine;

  if (engine == "all") {
    PmfTable ad = pmf_adelson(params, n_max);
    PmfTable gp = pmf_gps(params, n_max);
    PmfTable kp = pmf_kwon_philippou(params, n_max);
    PmfTable km = pmf_km(params, n_max);
    rec.columns = {"n", "adelson", "gps", "kp", "km", "max_rel_dev"};
    for (std::int64_t n = 0; n <= n_max; ++n) {
      double dev = 0.0;
      for (const PmfTable* t : {&gp, &kp, &km}) dev = std::max(dev, rel_diff(ad.at(n), t->at(n)));
      rec.rows.push_back({render_int(n), render_scaled(ad.at(n)), render_scaled(gp.at(n)),
                          render_scaled(kp.at(n)), render_scaled(km.at(n)), render_double(dev)});
    }
  } else {
    auto eng = parse_engine(engine);
    if (!eng) throw CLI::ValidationError("--engine", "unknown engine: " + engine);
    PmfTable t = pmf(params, n_max, *eng);
    rec.columns = {"n", "mantissa", "exponent", "value", "h"};
    for (std::int64_t n = 0; n <= n_max; ++n)
      rec.rows.push_back({render_int(n), render_double(t.at(n).mantissa()),
                          render_int(t.at(n).exponent()), render_scaled(t.at(n)),
                          render_scaled(t.h_at(n))});
  }
  stamp_and_write(rec, flags);
  return 0;
}

int cmd_stats(int k, double lambda, double mean_value, bool have_lambda, bool have_mean,
              const CommonFlags& flags) {
  if (have_lambda == have_mean)
    throw CLI::ValidationError("stats", "exactly one of --lambda/--mean is required");
  OrderKParams params = have_mean ? OrderKParams::from_mean(k, mean_value)
                                  : OrderKParams(k, lambda);
  SummaryStats s = summarize(params);
  OutputRecord rec;
  rec.command = "stats";
  rec.params = {{"k", render_int(k)},
                {have_mean ? "mean" : "lambda",
                 render_double(have_mean ? mean_value : lambda)}};
  rec.columns = {"k", "lambda", "kappa", "mean", "variance", "median", "cdf_at_median",
                 "modes", "multimodal"};
  rec.rows.push_back({render_int(k), render_double(params.lambda), render_int(params.kappa),
                      render_double(s.mean), render_double(s.variance), render_int(s.median),
                      render_double(s.cdf_at_median), join_modes(s.modes),
                      s.multimodal ? "true" : "false"});
  stamp_and_write(rec, flags);
  return 0;
}

int cmd_boundaries(const std::string& kind, int k, std::int64_t n_from, std::int64_t n_to,
                   const CommonFlags& flags) {
  if (n_to < n_from) throw CLI::ValidationError("boundaries", "--n-to must be >= --n-from");
  const bool is_median = kind == "median";
  SolverOptions opts = solver_options(flags);

  std::vector<BoundaryPoint> pts(static_cast<std::size_t>(n_to - n_from + 1));
  parallel_for(n_to - n_from + 1, flags.threads, [&](std::int64_t i) {
    std::int64_t n = n_from + i;
    pts[static_cast<std::size_t>(i)] = is_median ? alpha(k, n, opts) : beta(k, n, opts);
  });

  OutputRecord rec;
  rec.command = "boundaries";
  rec.params = {{"kind", kind},
                {"k", render_int(k)},
                {"n_from", render_int(n_from)},
                {"n_to", render_int(n_to)}};
  rec.provenance["lambda_rel_tol"] = render_double(opts.lambda_rel_tol);
  rec.columns = {"k",         "n",        "kind",     "value", "lambda",
                 "value_minus_n", "predicted", "deviation", "residual", "modes"};
  for (const BoundaryPoint& b : pts) {
    // For k=1 the median boundary has its own sharper expansion.
    double pred = is_median ? (k == 1 ? formulas::alpha_k1_expansion(static_cast<double>(b.n))
                                      : formulas::alpha_predicted(k, static_cast<double>(b.n)))
                            : formulas::beta_predicted(k, static_cast<double>(b.n));
    rec.rows.push_back({render_int(b.k), render_int(b.n), kind, render_double(b.value),
                        render_double(b.lambda),
                        render_double(b.value - static_cast<double>(b.n)), render_double(pred),
                        render_double(b.value - pred), render_double(b.residual),
                        b.modes_at_boundary ? join_modes(*b.modes_at_boundary) : ""});
  }
  stamp_and_write(rec, flags);
  return 0;
}

int cmd_double_modes(int k, double lambda_max, const CommonFlags& flags) {
  SolverOptions opts = solver_options(flags);
  FirstDoubleMode fdm = first_double_mode(k, lambda_max, opts);
  double sup = zero_mode_sup(k, opts);
  OutputRecord rec;
  rec.command = "double-modes";
  rec.params = {{"k", render_int(k)}, {"lambda_max", render_double(lambda_max)}};
  rec.provenance["lambda_rel_tol"] = render_double(opts.lambda_rel_tol);
  rec.columns = {"k", "lambda", "kappa_lambda", "modes", "kappa_lambda_zero"};
  rec.rows.push_back({render_int(k), render_double(fdm.lambda),
                      render_double(fdm.lambda * static_cast<double>(formulas::kappa_of(k))),
                      join_modes(fdm.modes), render_double(sup)});
  stamp_and_write(rec, flags);
  return 0;
}

int cmd_verify(const std::string& suite, bool list, int k_max_power_law,
               const CommonFlags& flags) {
  if (list) {
    for (const auto& n : suite_names()) std::cout << n << "\n";
    return 0;
  }
  HarnessConfig cfg;
  cfg.threads = flags.threads;
  if (k_max_power_law > 0) cfg.power_law_k_max = k_max_power_law;

  std::vector<std::string> selected;
  if (suite == "all")
    selected = suite_names();
  else
    selected.push_back(suite);

  OutputRecord rec;
  rec.command = "verify";
  rec.params = {{"suite", suite}};
  rec.columns = {"type", "name", "passed", "grid", "max_abs_deviation", "counterexamples",
                 "detail"};
  bool all_passed = true;
  for (const auto& name : selected) {
    SuiteResult res = run_suite(name, cfg);
    all_passed = all_passed && res.check.passed;
    std::string detail;
    for (std::size_t i = 0; i < res.check.counterexamples.size() && i < 5; ++i) {
      const Counterexample& ce = res.check.counterexamples[i];
      detail += (i ? " | " : "") + ce.note + " (k=" + render_int(ce.k) +
                ", x=" + render_double(ce.x) + ", got " + render_double(ce.observed) +
                ", want " + render_double(ce.expected) + ")";
    }
    rec.rows.push_back({"check", res.check.name, res.check.passed ? "true" : "false",
                        res.check.params_range, render_double(res.check.max_abs_deviation),
                        render_int(static_cast<std::int64_t>(res.check.counterexamples.size())),
                        detail});
    for (const FitReport& f : res.fits) {
      std::string coeffs;
      for (const auto& [key, value] : f.fitted_coefficients)
        coeffs += (coeffs.empty() ? "" : ";") + key + "=" + render_double(value);
      coeffs += ";rms=" + render_double(f.residual_rms);
      rec.rows.push_back({"fit", res.check.name, "", f.grid, render_double(f.residual_max),
                          "0", coeffs});
    }
    std::cerr << (res.check.passed ? "[PASS] " : "[FAIL] ") << res.check.name << "\n";
  }
  stamp_and_write(rec, flags);
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson distribution of order k: tables, statistics, boundaries, verification"};
  app.require_subcommand(1);

  CommonFlags pmf_flags, stats_flags, bound_flags, dm_flags, verify_flags, claims_flags;

  auto* pmf_cmd = app.add_subcommand("pmf", "probability mass table");
  int pmf_k = 1;
  double pmf_lambda = 1.0;
  std::int64_t pmf_nmax = 10;
  std::string pmf_engine = "gps";
  pmf_cmd->add_option("--k", pmf_k, "order")->required()->check(CLI::PositiveNumber);
  pmf_cmd->add_option("--lambda", pmf_lambda, "rate parameter")->required();
  pmf_cmd->add_option("--n-max", pmf_nmax, "last support point")->required();
  pmf_cmd->add_option("--engine", pmf_engine, "adelson|gps|kp|km|oracle|all");
  add_common(pmf_cmd, pmf_flags);

  auto* stats_cmd = app.add_subcommand("stats", "mean, variance, median, mode");
  int stats_k = 1;
  double stats_lambda = 0.0, stats_mean = 0.0;
  stats_cmd->add_option("--k", stats_k, "order")->required()->check(CLI::PositiveNumber);
  auto* lam_opt = stats_cmd->add_option("--lambda", stats_lambda, "rate parameter");
  auto* mean_opt = stats_cmd->add_option("--mean", stats_mean, "mean kappa*lambda");
  add_common(stats_cmd, stats_flags);

  auto* bound_cmd = app.add_subcommand("boundaries", "median/mode threshold sweep");
  std::string bound_kind;
  int bound_k = 1;
  std::int64_t bound_from = 0, bound_to = 0;
  bound_cmd->add_option("--kind", bound_kind, "median|mode")
      ->required()
      ->check(CLI::IsMember({"median", "mode"}));
  bound_cmd->add_option("--k", bound_k, "order")->required()->check(CLI::PositiveNumber);
  bound_cmd->add_option("--n-from", bound_from, "first integer mean")->required();
  bound_cmd->add_option("--n-to", bound_to, "last integer mean")->required();
  add_common(bound_cmd, bound_flags);

  auto* dm_cmd = app.add_subcommand("double-modes", "first double mode and zero-mode threshold");
  int dm_k = 2;
  double dm_lambda_max = 2.0;
  dm_cmd->add_option("--k", dm_k, "order")->required()->check(CLI::PositiveNumber);
  dm_cmd->add_option("--lambda-max", dm_lambda_max, "scan limit");
  add_common(dm_cmd, dm_flags);

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  std::string verify_suite = "all";
  bool verify_list = false;
  int verify_kmax = 0;
  verify_cmd->add_option("--suite", verify_suite, "suite name or 'all'");
  verify_cmd->add_flag("--list", verify_list, "list suite names");
  verify_cmd->add_option("--k-max", verify_kmax, "power-law grid limit");
  add_common(verify_cmd, verify_flags);

  auto* claims_cmd = app.add_subcommand("claims", "emit the claim index (markdown)");
  std::string claims_out;
  claims_cmd->add_option("--out", claims_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (pmf_cmd->parsed())
      return cmd_pmf(pmf_k, pmf_lambda, pmf_nmax, pmf_engine, pmf_flags);
    if (stats_cmd->parsed())
      return cmd_stats(stats_k, stats_lambda, stats_mean, lam_opt->count() > 0,
                       mean_opt->count() > 0, stats_flags);
    if (bound_cmd->parsed())
      return cmd_boundaries(bound_kind, bound_k, bound_from, bound_to, bound_flags);
    if (dm_cmd->parsed()) return cmd_double_modes(dm_k, dm_lambda_max, dm_flags);
    if (verify_cmd->parsed())
      return cmd_verify(verify_suite, verify_list, verify_kmax, verify_flags);
    if (claims_cmd->parsed()) {
      std::string doc = generate_claim_index();
      if (claims_out.empty()) {
        std::cout << doc;
      } else {
        std::ofstream f(claims_out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + claims_out);
        f << doc;
      }
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BracketError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
