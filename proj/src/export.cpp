#include "rho/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rho/errors.hpp"

namespace rho {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

// CSV fields here never contain quotes, but describe() output has commas.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class F>
auto config_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Json density_to_json(const Density1D& d) {
  Json params;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, dens::Gaussian>) {
          params = {{"mean", p.mean}, {"sd", p.sd}};
        } else if constexpr (std::is_same_v<T, dens::Cauchy> || std::is_same_v<T, dens::Laplace>) {
          params = {{"loc", p.loc}, {"scale", p.scale}};
        } else if constexpr (std::is_same_v<T, dens::Uniform>) {
          params = {{"a", p.a}, {"b", p.b}};
        } else if constexpr (std::is_same_v<T, dens::Exponential>) {
          params = {{"rate", p.rate}, {"shift", p.shift}};
        } else if constexpr (std::is_same_v<T, dens::Histogram>) {
          params = {{"breaks", p.breaks}, {"heights", p.heights}};
        } else if constexpr (std::is_same_v<T, dens::ExpFamily>) {
          std::vector<std::string> basis;
          for (const auto& b : p.basis) basis.push_back(b.to_string());
          params = {{"basis", basis}, {"coef", p.coef}, {"lo", p.lo}, {"hi", p.hi}};
        } else if constexpr (std::is_same_v<T, dens::PathologicalGaussian>) {
          params = {{"theta", p.theta}};
        } else {
          params = {{"grid", p.grid}, {"values", p.values}};
        }
      },
      d.params());
  Json j = {{"kind", to_string(d.kind())}, {"params", params}};
  if (d.offset() != 0.0) j["offset"] = d.offset();
  return j;
}

Density1D density_from_json(const Json& j) {
  return config_guard("density", [&]() {
    const Json& p = j.at("params");
    Density1D d = [&]() {
      switch (kind_from_string(j.at("kind").get<std::string>())) {
        case Density1D::Kind::gaussian:
          return Density1D::gaussian(p.at("mean").get<double>(), p.at("sd").get<double>());
        case Density1D::Kind::cauchy:
          return Density1D::cauchy(p.at("loc").get<double>(), p.at("scale").get<double>());
        case Density1D::Kind::laplace:
          return Density1D::laplace(p.at("loc").get<double>(), p.at("scale").get<double>());
        case Density1D::Kind::uniform:
          return Density1D::uniform(p.at("a").get<double>(), p.at("b").get<double>());
        case Density1D::Kind::exponential:
          return Density1D::exponential(p.at("rate").get<double>(), p.value("shift", 0.0));
        case Density1D::Kind::histogram:
          return Density1D::histogram(p.at("breaks").get<std::vector<double>>(),
                                      p.at("heights").get<std::vector<double>>());
        case Density1D::Kind::exp_family: {
          std::vector<dens::BasisTerm> basis;
          for (const auto& b : p.at("basis")) basis.push_back(dens::BasisTerm::parse(b.get<std::string>()));
          return Density1D::exp_family(std::move(basis), p.at("coef").get<std::vector<double>>(),
                                       p.at("lo").get<double>(), p.at("hi").get<double>());
        }
        case Density1D::Kind::pathological_gaussian:
          return Density1D::pathological_gaussian(p.at("theta").get<double>());
        case Density1D::Kind::tabulated:
          return Density1D::tabulated(p.at("grid").get<std::vector<double>>(),
                                      p.at("values").get<std::vector<double>>());
      }
      throw ContractViolation("unknown density kind");
    }();
    const double off = j.value("offset", 0.0);
    return off != 0.0 ? d.shifted(off) : d;
  });
}

Json predictor_to_json(const LinearPredictor& g) {
  std::vector<std::string> basis;
  for (const auto& t : g.basis) basis.push_back(t.to_string());
  return {{"basis", basis}, {"coef", g.coef}};
}

LinearPredictor predictor_from_json(const Json& j) {
  return config_guard("predictor", [&]() {
    LinearPredictor g;
    for (const auto& t : j.at("basis")) g.basis.push_back(PredictorTerm::parse(t.get<std::string>()));
    g.coef = j.at("coef").get<std::vector<double>>();
    if (g.coef.size() != g.basis.size()) throw ContractViolation("basis and coef lengths differ");
    return g;
  });
}

Json fit_to_json(const RhoFit& fit) {
  Json trace = Json::array();
  for (double v : fit.trace) trace.push_back(number(v));
  return {{"chosen_index", fit.chosen_index},
          {"criterion", number(fit.upsilon_at_chosen)},
          {"criterion_min", number(fit.upsilon_min)},
          {"slack", fit.slack},
          {"admissible_set", fit.admissible_set},
          {"trace", trace}};
}

Json model_to_json(const ModelDescriptor& m) {
  Json j = {{"name", m.name},
            {"size", m.family.size()},
            {"dim_bound", m.dim_bound},
            {"bound_source", to_string(m.bound_source)},
            {"delta", m.delta_weight},
            {"diagnostics", m.diagnostics}};
  j["vc_index"] = m.vc_index ? Json(*m.vc_index) : Json(nullptr);
  if (!m.vc_provenance.empty()) j["vc_provenance"] = m.vc_provenance;
  return j;
}

Json saddle_to_json(const SaddleResult& r) {
  return {{"alpha_star", r.alpha_star.weights},
          {"certificate", number(r.certificate)},
          {"iterations", r.iterations},
          {"condition_number", number(r.condition_number)},
          {"converged", r.converged}};
}

Json regression_fit_to_json(const RegressionFit& fit) {
  return {{"theta_hat", fit.f_hat.coef},
          {"g_id", fit.f_hat.describe()},
          {"g", predictor_to_json(fit.f_hat)},
          {"r_id", fit.s_hat.describe()},
          {"r", density_to_json(fit.s_hat)},
          {"criterion", number(fit.selection.fit.upsilon_at_chosen)},
          {"selected_models", fit.selection.selected_models},
          {"fit", fit_to_json(fit.selection.fit)}};
}

Json risk_report_to_json(const RiskReport& r) {
  Json reps = Json::array();
  for (const auto& rec : r.per_replicate) {
    reps.push_back({{"replicate", rec.replicate}, {"h2", number(rec.h2)}, {"estimate", rec.estimate}});
  }
  return {{"mean_h2", number(r.mean_h2)},
          {"median_h2", number(r.median_h2)},
          {"stderr", number(r.stderr_h2)},
          {"per_replicate", reps},
          {"failed_replicates", r.failed_replicates},
          {"failure_messages", r.failure_messages},
          {"bound_reference", r.bound_reference ? number(*r.bound_reference) : Json(nullptr)}};
}

RiskReport risk_report_from_json(const Json& j) {
  return config_guard("risk report", [&]() {
    RiskReport r;
    r.mean_h2 = number_from(j.at("mean_h2"));
    r.median_h2 = number_from(j.at("median_h2"));
    r.stderr_h2 = number_from(j.at("stderr"));
    for (const auto& rec : j.at("per_replicate")) {
      r.per_replicate.push_back(ReplicateRecord{rec.at("replicate").get<std::size_t>(),
                                                number_from(rec.at("h2")),
                                                rec.at("estimate").get<std::string>()});
    }
    r.failed_replicates = j.at("failed_replicates").get<std::vector<std::size_t>>();
    r.failure_messages = j.at("failure_messages").get<std::vector<std::string>>();
    if (!j.at("bound_reference").is_null()) r.bound_reference = j.at("bound_reference").get<double>();
    return r;
  });
}

Json mle_report_to_json(const MleReport& r) {
  Json reps = Json::array();
  for (const auto& rec : r.per_replicate) {
    reps.push_back({{"replicate", rec.replicate},
                    {"event", rec.event},
                    {"sample_max", rec.sample_max},
                    {"sample_mean", rec.sample_mean},
                    {"mle", rec.mle},
                    {"rho_theta", rec.rho_theta}});
  }
  return {{"theta", r.theta},
          {"n", r.n},
          {"events", r.events},
          {"freq_event", r.freq_event},
          {"mle_at_max", r.mle_at_max},
          {"freq_mle_at_max", number(r.freq_mle_at_max)},
          {"rho_error_median", number(r.rho_error_median)},
          {"rho_errors", r.rho_errors},
          {"per_replicate", reps}};
}

void write_risk_csv(const RiskReport& r, std::ostream& os) {
  os << "replicate,h2,estimate\n";
  for (const auto& rec : r.per_replicate) {
    os << rec.replicate << ',' << format_double(rec.h2) << ',' << csv_field(rec.estimate) << '\n';
  }
}

void write_mle_csv(const MleReport& r, std::ostream& os) {
  os << "replicate,event,sample_max,sample_mean,mle,rho_theta\n";
  for (const auto& rec : r.per_replicate) {
    os << rec.replicate << ',' << (rec.event ? 1 : 0) << ',' << format_double(rec.sample_max) << ','
       << format_double(rec.sample_mean) << ',' << format_double(rec.mle) << ','
       << format_double(rec.rho_theta) << '\n';
  }
}

void export_risk_report(const RiskReport& r, Format f, std::ostream& os) {
  if (f == Format::csv) {
    write_risk_csv(r, os);
  } else {
    os << risk_report_to_json(r).dump(2) << '\n';
  }
}

void export_mle_report(const MleReport& r, Format f, std::ostream& os) {
  if (f == Format::csv) {
    write_mle_csv(r, os);
  } else {
    os << mle_report_to_json(r).dump(2) << '\n';
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace rho
