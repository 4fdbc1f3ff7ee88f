// Command-line front end: rho <subcommand> [global flags].

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rho/aggregation.hpp"
#include "rho/config.hpp"
#include "rho/errors.hpp"
#include "rho/export.hpp"
#include "rho/harness.hpp"
#include "rho/model_zoo.hpp"
#include "rho/psi.hpp"
#include "rho/regression.hpp"
#include "rho/selection.hpp"

namespace {

using namespace rho;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Globals {
  std::string config;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string psi = "psi2";
  double kappa_multiplier = 1.0;
  double c1 = 1.0;

  PsiKernel kernel() const { return kernel_constants(psi_from_string(psi)); }
  Format fmt() const { return format_from_string(format); }
  Json load() const {
    if (config.empty()) throw ConfigError("this subcommand needs --config <path.json>");
    return load_json_file(config);
  }
};

std::string trace_csv(const DensityFamily& fam, const RhoFit& fit) {
  std::ostringstream os;
  os << "index,label,criterion,admissible,chosen\n";
  for (std::size_t j = 0; j < fit.trace.size(); ++j) {
    bool adm = false;
    for (std::size_t a : fit.admissible_set) adm = adm || a == j;
    os << j << ',' << '"' << fam.label(j) << '"' << ',' << format_double(fit.trace[j]) << ','
       << (adm ? 1 : 0) << ',' << (j == fit.chosen_index ? 1 : 0) << '\n';
  }
  return os.str();
}

Json selection_json(const ModelCollection& coll, const SelectionResult& sel) {
  const DensityFamily& fam = coll.union_family();
  Json models = Json::array();
  for (const auto& m : coll.models()) models.push_back(model_to_json(m));
  Json j = {{"models", models},
            {"fit", fit_to_json(sel.fit)},
            {"selected_models", sel.selected_models},
            {"label", fam.label(sel.fit.chosen_index)},
            {"parameters", fam.parameters(sel.fit.chosen_index)}};
  const auto& c = fam.entry(sel.fit.chosen_index).coordinate(0);
  if (const auto* d = std::get_if<Density1D>(&c)) j["estimate"] = density_to_json(*d);
  return j;
}

void run_select(const Globals& g, bool single) {
  const Json cfg = g.load();
  const Sample X = scalar_sample_from_json(cfg);
  std::vector<ModelDescriptor> models;
  if (single) {
    if (!cfg.contains("model")) throw ConfigError("fit: config needs a \"model\" object");
    models.push_back(model_from_json(cfg.at("model"), X.size(), g.c1));
    models.back().delta_weight = 0.0;
  } else {
    models = models_from_json(cfg, X.size(), g.c1);
  }
  const ModelCollection coll(std::move(models), g.kernel());
  const SelectionResult sel = select(X, coll, g.kappa_multiplier);
  if (g.fmt() == Format::csv) {
    write_output(g.out, trace_csv(coll.union_family(), sel.fit));
    return;
  }
  Json j = selection_json(coll, sel);
  if (!single) {
    const double xi = cfg.value("xi", 1.0);
    Json bounds = Json::array();
    for (std::size_t m = 0; m < coll.models().size(); ++m) bounds.push_back(risk_bound_report(coll, m, xi));
    j["risk_bounds"] = bounds;
  }
  write_output(g.out, j.dump(2) + "\n");
}

void run_aggregate(const Globals& g) {
  const Json cfg = g.load();
  const Sample X = scalar_sample_from_json(cfg);
  std::vector<ProductDensity> cands;
  try {
    for (const auto& d : cfg.at("candidates")) cands.push_back(ProductDensity::iid(density_from_json(d), X.size()));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("candidates: ") + e.what());
  }
  SaddleConfig sc;
  sc.eps = cfg.value("eps", sc.eps);
  sc.max_outer = cfg.value("max_outer", sc.max_outer);
  sc.max_condition = cfg.value("max_condition", sc.max_condition);
  if (cfg.contains("inner")) {
    sc.inner.tol = cfg["inner"].value("tol", sc.inner.tol);
    sc.inner.max_iter = cfg["inner"].value("max_iter", sc.inner.max_iter);
  }
  const CandidateSet cs(std::move(cands), X);
  const SaddleResult r = saddle_point(cs, g.kernel(), sc);
  if (!r.converged) {
    std::cerr << "warning: saddle iteration stopped after " << r.iterations
              << " outer steps with certificate " << r.certificate << "\n";
  }
  if (g.fmt() == Format::csv) {
    std::ostringstream os;
    os << "candidate,alpha\n";
    for (std::size_t j = 0; j < r.alpha_star.weights.size(); ++j) {
      os << j << ',' << format_double(r.alpha_star.weights[j]) << '\n';
    }
    write_output(g.out, os.str());
  } else {
    write_output(g.out, saddle_to_json(r).dump(2) + "\n");
  }
  if (!r.converged) throw NumericalFailure("saddle iteration did not reach eps");
}

void run_regress(const Globals& g) {
  const Json cfg = g.load();
  const Sample X = pair_sample_from_json(cfg);
  const ModelCollection coll = build_regression_family(regression_models_from_json(cfg), X.size(), g.kernel(), g.c1);
  const RegressionFit fit = fit_regression(X, coll, g.kappa_multiplier);
  if (g.fmt() == Format::csv) {
    write_output(g.out, trace_csv(coll.union_family(), fit.selection.fit));
  } else {
    write_output(g.out, regression_fit_to_json(fit).dump(2) + "\n");
  }
}

void run_bench(const Globals& g) {
  const Json cfg = g.load();
  const Scenario sc = scenario_from_json(cfg.at("scenario"), g.seed);
  const Density1D truth = cfg.contains("truth") ? density_from_json(cfg.at("truth")) : sc.center;
  const Json est_cfg = cfg.value("estimator", Json{{"type", "rho"}});
  const std::string type = est_cfg.value("type", "rho");
  Estimator est;
  std::optional<double> bound;
  if (type == "rho") {
    if (!est_cfg.contains("model")) throw ConfigError("estimator: rho needs a \"model\"");
    ModelDescriptor m = model_from_json(est_cfg.at("model"), sc.n, g.c1);
    m.delta_weight = 0.0;
    const ModelCollection coll({std::move(m)}, g.kernel());
    // Risk bound constant per observation, without the bias term.
    bound = risk_bound_report(coll, 0, cfg.value("xi", 1.0)) / static_cast<double>(sc.n);
    est = rho_estimator(coll, g.kappa_multiplier);
  } else if (type == "gaussian_mle") {
    est = gaussian_mle_estimator();
  } else {
    throw ConfigError("unknown estimator type '" + type + "'");
  }
  RiskReport rep = mc_risk(sc, est, truth);
  rep.bound_reference = bound;
  std::ostringstream os;
  export_risk_report(rep, g.fmt(), os);
  write_output(g.out, os.str());
}

struct BoundsArgs {
  std::size_t n = 100;
  std::vector<std::size_t> cardinalities;
  std::vector<double> vc;
  std::vector<double> entropy;
};

void run_bounds(const Globals& g, BoundsArgs a) {
  if (!g.config.empty()) {
    const Json cfg = g.load();
    try {
      a.n = cfg.value("n", a.n);
      if (cfg.contains("finite")) a.cardinalities = cfg["finite"].get<std::vector<std::size_t>>();
      if (cfg.contains("vc")) a.vc = cfg["vc"].get<std::vector<double>>();
      if (cfg.contains("entropy")) a.entropy = cfg["entropy"].get<std::vector<double>>();
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("bounds: ") + e.what());
    }
  }
  if (a.n == 0) throw ConfigError("bounds: n must be >= 1");
  const PsiKernel k = g.kernel();
  struct Row {
    std::string kind;
    double input;
    double bound;
    std::string note;
  };
  std::vector<Row> rows;
  try {
    for (std::size_t c : a.cardinalities) {
      rows.push_back({"finite", static_cast<double>(c), dimension_bound_finite(c), ""});
    }
    for (double v : a.vc) {
      std::vector<std::string> w;
      const double b = dimension_bound_vc(v, a.n, g.c1, &w);
      rows.push_back({"vc", v, b, w.empty() ? "" : w.front()});
    }
    for (double v : a.entropy) rows.push_back({"entropy", v, dimension_bound_entropy(v), ""});
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  if (g.fmt() == Format::csv) {
    std::ostringstream os;
    os << "kind,input,n,bound\n";
    for (const Row& r : rows) os << r.kind << ',' << format_double(r.input) << ',' << a.n << ',' << format_double(r.bound) << '\n';
    write_output(g.out, os.str());
    return;
  }
  Json arr = Json::array();
  for (const Row& r : rows) {
    Json e = {{"kind", r.kind}, {"input", r.input}, {"bound", r.bound}};
    if (!r.note.empty()) e["warning"] = r.note;
    arr.push_back(e);
  }
  const Json j = {{"psi", to_string(k.id)},
                  {"a0", k.a0},
                  {"a1", k.a1},
                  {"a2_sq", k.a2_sq},
                  {"beta", k.beta},
                  {"kappa", k.kappa},
                  {"gamma", k.gamma},
                  {"slack", g.kappa_multiplier * k.default_slack()},
                  {"n", a.n},
                  {"c1", g.c1},
                  {"bounds", arr}};
  write_output(g.out, j.dump(2) + "\n");
}

struct MleArgs {
  double theta = 0.0;
  std::size_t n = 100;
  std::size_t reps = 200;
};

void run_demo_mle(const Globals& g, MleArgs a) {
  MleConfig mc;
  mc.psi = psi_from_string(g.psi);
  if (!g.config.empty()) {
    const Json cfg = g.load();
    try {
      a.theta = cfg.value("theta", a.theta);
      a.n = cfg.value("n", a.n);
      a.reps = cfg.value("reps", a.reps);
      mc.grid_lo = cfg.value("grid_lo", mc.grid_lo);
      mc.grid_hi = cfg.value("grid_hi", mc.grid_hi);
      mc.grid_step = cfg.value("grid_step", mc.grid_step);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("demo-mle: ") + e.what());
    }
  }
  MleReport r;
  try {
    r = mle_counterexample(a.theta, a.n, a.reps, g.seed, mc);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  std::ostringstream os;
  export_mle_report(r, g.fmt(), os);
  write_output(g.out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rho: robust density estimation, model selection, aggregation and regression"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON configuration file");
  app.add_option("--seed", g.seed, "base seed for Monte Carlo streams");
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--psi", g.psi, "psi1 or psi2")->check(CLI::IsMember({"psi1", "psi2"}));
  app.add_option("--kappa-multiplier", g.kappa_multiplier, "scales the default slack kappa/25")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--c1", g.c1, "constant of the VC dimension bound")->check(CLI::PositiveNumber);
  app.fallthrough();

  auto* fit = app.add_subcommand("fit", "rho-estimate over a single model");
  auto* sel = app.add_subcommand("select", "penalized selection over several models");
  auto* agg = app.add_subcommand("aggregate", "convex aggregation by the saddle-point iteration");
  auto* reg = app.add_subcommand("regress", "random-design regression");
  auto* bench = app.add_subcommand("bench", "Monte Carlo risk of an estimator on a scenario");
  auto* bounds = app.add_subcommand("bounds", "dimension bounds and kernel constants");
  auto* mle = app.add_subcommand("demo-mle", "maximum likelihood versus rho on a spiked Gaussian family");

  BoundsArgs ba;
  bounds->add_option("--n", ba.n, "sample size");
  bounds->add_option("--cardinality", ba.cardinalities, "finite model sizes");
  bounds->add_option("--vc", ba.vc, "VC indices");
  bounds->add_option("--entropy-dim", ba.entropy, "entropy dimensions");
  MleArgs ma;
  mle->add_option("--theta", ma.theta, "true location");
  mle->add_option("--n", ma.n, "sample size");
  mle->add_option("--reps", ma.reps, "replicates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*fit) run_select(g, true);
    if (*sel) run_select(g, false);
    if (*agg) run_aggregate(g);
    if (*reg) run_regress(g);
    if (*bench) run_bench(g);
    if (*bounds) run_bounds(g, ba);
    if (*mle) run_demo_mle(g, ma);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ContractViolation& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
