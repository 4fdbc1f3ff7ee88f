#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rho/export.hpp"
#include "rho/harness.hpp"
#include "rho/model_zoo.hpp"
#include "rho/regression.hpp"
#include "rho/sample.hpp"

namespace rho {

// Every parser throws ConfigError on malformed or inconsistent input.

Json load_json_file(const std::string& path);

/// Numbers separated by whitespace or commas; '#' starts a comment.
std::vector<double> read_numbers_file(const std::string& path);

/// {"data": [...]} or {"data_file": path}.
Sample scalar_sample_from_json(const Json& j);

/// {"data": {"w": [...], "y": [...]}} or {"data_file": path} with w,y rows.
Sample pair_sample_from_json(const Json& j);

/// A model spec: {"type": gaussian_location | histogram | exp_family | finite, ...}.
ModelDescriptor model_from_json(const Json& j, std::size_t n, double c1);

/// {"models": [spec...]}; spec "delta" fields are used when every model has
/// one, otherwise the uniform weights log M.
std::vector<ModelDescriptor> models_from_json(const Json& j, std::size_t n, double c1);

/// {"error_models": [...], "function_families": [{basis, grid, vc_index?}],
/// "weights": [...]?}. One model per (error model, function family) pair.
std::vector<RegressionModel> regression_models_from_json(const Json& j);

Scenario scenario_from_json(const Json& j, std::uint64_t seed);

}  // namespace rho
