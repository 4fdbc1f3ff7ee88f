#include "rho/config.hpp"

#include <fstream>
#include <sstream>

#include "rho/errors.hpp"

namespace rho {

namespace {

template <class F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ConfigError(what + ": " + e.what());
  } catch (const ContractViolation& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::vector<double> doubles(const Json& j, const char* key) { return j.at(key).get<std::vector<double>>(); }

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<double> read_numbers_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open data file '" + path + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ConfigError("data file '" + path + "': bad number '" + tok + "'");
      out.push_back(v);
    }
  }
  return out;
}

Sample scalar_sample_from_json(const Json& j) {
  return guarded("data", [&]() {
    std::vector<double> x;
    if (j.contains("data")) {
      x = doubles(j, "data");
    } else if (j.contains("data_file")) {
      x = read_numbers_file(j.at("data_file").get<std::string>());
    } else {
      throw ConfigError("config needs \"data\" or \"data_file\"");
    }
    if (x.empty()) throw ConfigError("data: no observations");
    return Sample::scalars(std::move(x));
  });
}

Sample pair_sample_from_json(const Json& j) {
  return guarded("data", [&]() {
    std::vector<double> w;
    std::vector<double> y;
    if (j.contains("data")) {
      w = doubles(j.at("data"), "w");
      y = doubles(j.at("data"), "y");
    } else if (j.contains("data_file")) {
      const std::vector<double> flat = read_numbers_file(j.at("data_file").get<std::string>());
      if (flat.size() % 2 != 0) throw ConfigError("data file: expected rows of 'w y'");
      for (std::size_t i = 0; i < flat.size(); i += 2) {
        w.push_back(flat[i]);
        y.push_back(flat[i + 1]);
      }
    } else {
      throw ConfigError("config needs \"data\" or \"data_file\"");
    }
    if (w.size() != y.size() || y.empty()) throw ConfigError("data: w and y must be nonempty and of equal length");
    return Sample::pairs(std::move(w), std::move(y));
  });
}

ModelDescriptor model_from_json(const Json& j, std::size_t n, double c1) {
  return guarded("model", [&]() {
    const std::string type = j.at("type").get<std::string>();
    ModelDescriptor m;
    if (type == "gaussian_location") {
      m = build_gaussian_location_grid(j.at("theta_min").get<double>(), j.at("theta_max").get<double>(),
                                       j.at("step").get<double>(), j.value("sd", 1.0), n, c1);
    } else if (type == "histogram") {
      m = build_histogram_family(j.at("grids").get<std::vector<std::vector<double>>>(),
                                 j.at("k").get<std::size_t>(), j.at("simplex_points").get<std::size_t>(),
                                 n, c1);
    } else if (type == "exp_family") {
      std::vector<dens::BasisTerm> basis;
      for (const auto& b : j.at("basis")) basis.push_back(dens::BasisTerm::parse(b.get<std::string>()));
      m = build_exp_family_grid(basis, j.at("lo").get<double>(), j.at("hi").get<double>(),
                                cartesian_grid(j.at("grid").get<std::vector<std::vector<double>>>()), n, c1);
    } else if (type == "finite") {
      std::vector<Density1D> ds;
      for (const auto& d : j.at("densities")) ds.push_back(density_from_json(d));
      m = build_finite_model(ds, n);
    } else {
      throw ConfigError("unknown model type '" + type + "'");
    }
    if (j.contains("name")) m.name = j.at("name").get<std::string>();
    if (j.contains("delta")) m.delta_weight = j.at("delta").get<double>();
    return m;
  });
}

std::vector<ModelDescriptor> models_from_json(const Json& j, std::size_t n, double c1) {
  return guarded("models", [&]() {
    const Json& specs = j.at("models");
    if (!specs.is_array() || specs.empty()) throw ConfigError("\"models\" must be a nonempty array");
    std::vector<ModelDescriptor> out;
    bool all_weighted = true;
    for (const auto& s : specs) {
      out.push_back(model_from_json(s, n, c1));
      all_weighted = all_weighted && s.contains("delta");
    }
    if (!all_weighted) {
      const std::vector<double> w = uniform_weights(out.size());
      for (std::size_t m = 0; m < out.size(); ++m) out[m].delta_weight = w[m];
    }
    return out;
  });
}

std::vector<RegressionModel> regression_models_from_json(const Json& j) {
  return guarded("regression", [&]() {
    std::vector<Density1D> errors;
    for (const auto& e : j.at("error_models")) errors.push_back(density_from_json(e));
    struct Fam {
      std::vector<LinearPredictor> functions;
      double vc;
      std::string name;
    };
    std::vector<Fam> fams;
    for (const auto& f : j.at("function_families")) {
      std::vector<PredictorTerm> basis;
      for (const auto& t : f.at("basis")) basis.push_back(PredictorTerm::parse(t.get<std::string>()));
      const auto axes = f.at("grid").get<std::vector<std::vector<double>>>();
      if (axes.size() != basis.size()) throw ConfigError("function family: one grid axis per basis term");
      // A span of d functions has VC index at most d + 2.
      const double vc = f.value("vc_index", static_cast<double>(basis.size() + 2));
      fams.push_back(Fam{predictor_grid(basis, cartesian_grid(axes)), vc, f.value("name", "F")});
    }
    if (errors.empty() || fams.empty()) throw ConfigError("need at least one error model and one function family");
    const std::size_t count = errors.size() * fams.size();
    std::vector<double> weights;
    if (j.contains("weights")) {
      weights = doubles(j, "weights");
      if (weights.size() != count) {
        throw ConfigError("\"weights\" needs one entry per (error model, function family) pair");
      }
    } else {
      weights = uniform_weights(count);
    }
    const std::vector<double> multipliers =
        j.contains("mode_multipliers") ? doubles(j, "mode_multipliers") : std::vector<double>{};
    std::vector<RegressionModel> out;
    for (std::size_t e = 0; e < errors.size(); ++e) {
      for (std::size_t f = 0; f < fams.size(); ++f) {
        RegressionModel m{to_string(errors[e].kind()) + "/" + fams[f].name, errors[e], {}, 0.0, 0.0, {}};
        m.functions = fams[f].functions;
        m.vc_index_F = fams[f].vc;
        m.delta_weight = weights[e * fams.size() + f];
        if (e < multipliers.size()) m.mode_multiplier = multipliers[e];
        out.push_back(std::move(m));
      }
    }
    return out;
  });
}

Scenario scenario_from_json(const Json& j, std::uint64_t seed) {
  return guarded("scenario", [&]() {
    const std::string kind = j.value("kind", "iid");
    const Density1D center = density_from_json(j.at("center"));
    const auto n = j.at("n").get<std::size_t>();
    const auto reps = j.value("replications", std::size_t{1});
    if (kind == "iid") return Scenario::iid(center, n, reps, seed);
    if (kind == "contaminated") {
      return Scenario::contaminated(center, density_from_json(j.at("contamination")),
                                    j.at("epsilon").get<double>(), n, reps, seed);
    }
    if (kind == "outliers") {
      return Scenario::outliers(center, j.at("outlier_indices").get<std::vector<std::size_t>>(),
                                doubles(j, "outlier_points"), n, reps, seed);
    }
    throw ConfigError("unknown scenario kind '" + kind + "'");
  });
}

}  // namespace rho
