#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "rho/aggregation.hpp"
#include "rho/criterion.hpp"
#include "rho/density.hpp"
#include "rho/harness.hpp"
#include "rho/model_zoo.hpp"
#include "rho/regression.hpp"

namespace rho {

using Json = nlohmann::json;

enum class Format { csv, json };
Format format_from_string(const std::string& s);

/// Shortest-free fixed form: 17 significant digits, '.' decimal point,
/// "nan" / "inf" / "-inf" for non-finite values. Independent of locale.
std::string format_double(double v);

// Densities as {"kind": ..., "params": {...}, "offset": c}.
Json density_to_json(const Density1D& d);
Density1D density_from_json(const Json& j);

Json predictor_to_json(const LinearPredictor& g);
LinearPredictor predictor_from_json(const Json& j);

Json fit_to_json(const RhoFit& fit);
Json model_to_json(const ModelDescriptor& m);
Json saddle_to_json(const SaddleResult& r);
Json regression_fit_to_json(const RegressionFit& fit);

Json risk_report_to_json(const RiskReport& r);
RiskReport risk_report_from_json(const Json& j);
Json mle_report_to_json(const MleReport& r);

/// Columns: replicate,h2,estimate. Header only when there are no replicates.
void write_risk_csv(const RiskReport& r, std::ostream& os);
/// Columns: replicate,event,sample_max,sample_mean,mle,rho_theta.
void write_mle_csv(const MleReport& r, std::ostream& os);

void export_risk_report(const RiskReport& r, Format f, std::ostream& os);
void export_mle_report(const MleReport& r, Format f, std::ostream& os);

/// Writes text to path, or to stdout when path is empty or "-". Throws IoError.
void write_output(const std::string& path, const std::string& text);

}  // namespace rho
