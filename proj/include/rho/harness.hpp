#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rho/density.hpp"
#include "rho/family.hpp"
#include "rho/product.hpp"
#include "rho/psi.hpp"
#include "rho/quadrature.hpp"
#include "rho/rng.hpp"
#include "rho/sample.hpp"
#include "rho/selection.hpp"

namespace rho {

/// Width of the narrow uniforms standing in for point masses.
inline constexpr double kPointMassWidth = 1e-9;

struct Scenario {
  enum class Kind { iid, contaminated, outliers };
  Kind kind = Kind::iid;
  Density1D center = Density1D::gaussian(0.0, 1.0);
  /// Contaminating distribution R (contaminated scenarios).
  std::optional<Density1D> contamination;
  double epsilon = 0.0;
  /// Indices replaced by point masses, and where the masses sit.
  std::vector<std::size_t> outlier_indices;
  std::vector<double> outlier_points;
  std::size_t n = 1;
  std::size_t replications = 1;
  std::uint64_t seed = 0;

  static Scenario iid(Density1D p, std::size_t n, std::size_t replications, std::uint64_t seed);
  static Scenario contaminated(Density1D center, Density1D contamination, double epsilon,
                               std::size_t n, std::size_t replications, std::uint64_t seed);
  static Scenario outliers(Density1D p, std::vector<std::size_t> indices, std::vector<double> points,
                           std::size_t n, std::size_t replications, std::uint64_t seed);

  void validate() const;

  /// Coordinate densities of the data-generating product (narrow uniforms
  /// at the outlier indices). Not available for contaminated scenarios,
  /// whose coordinates are mixtures.
  ProductDensity truth_product() const;
};

/// Replicate r, drawn from stream r of the scenario seed.
Sample simulate_replicate(const Scenario& s, std::size_t replicate);
std::vector<Sample> simulate(const Scenario& s);

/// (W_i, f(W_i) + e_i) with W ~ design, e ~ error.
Sample simulate_regression(const Density1D& design, const LinearPredictor& f,
                           const Density1D& error, std::size_t n, CounterRng& rng);

/// h^2((1 - eps) center + eps R, center), which never exceeds eps.
double contamination_bias_h2(const Density1D& center, const Density1D& contamination, double eps,
                             const QuadratureSpec& quad = {});

/// Maps one sample to one estimated coordinate density.
using Estimator = std::function<Density1D(const Sample&)>;

/// The chosen entry of penalized rho-estimation over `coll` (i.i.d. entries).
Estimator rho_estimator(const ModelCollection& coll, double slack_multiplier = 1.0,
                        Exec exec = Exec::serial);

/// N(sample mean, sample sd^2): the Gaussian maximum-likelihood plug-in.
Estimator gaussian_mle_estimator();

struct ReplicateRecord {
  std::size_t replicate = 0;
  double h2 = 0.0;
  std::string estimate;
  bool operator==(const ReplicateRecord&) const = default;
};

struct RiskReport {
  double mean_h2 = 0.0;
  double median_h2 = 0.0;
  double stderr_h2 = 0.0;
  std::vector<ReplicateRecord> per_replicate;
  /// Replicates whose fit failed; excluded from the statistics.
  std::vector<std::size_t> failed_replicates;
  std::vector<std::string> failure_messages;
  std::optional<double> bound_reference;

  bool operator==(const RiskReport&) const = default;
};

double median(std::vector<double> v);

/// Summary statistics recomputed from per_replicate.
void summarize(RiskReport& r);

/// For each replicate: simulate, estimate, and record h^2(truth, estimate).
/// Replicates run in parallel when exec is parallel; results are identical
/// either way.
RiskReport mc_risk(const Scenario& s, const Estimator& est, const Density1D& truth_for_loss,
                   const QuadratureSpec& quad = {}, Exec exec = Exec::parallel);

struct MleReplicate {
  std::size_t replicate = 0;
  bool event = false;
  double sample_max = 0.0;
  double sample_mean = 0.0;
  double mle = 0.0;
  double rho_theta = 0.0;
};

struct MleReport {
  double theta = 0.0;
  std::size_t n = 0;
  std::size_t events = 0;
  double freq_event = 0.0;
  std::size_t mle_at_max = 0;
  /// Among replicates where the event holds; NaN when it never holds.
  double freq_mle_at_max = 0.0;
  std::vector<double> rho_errors;
  double rho_error_median = 0.0;
  std::vector<MleReplicate> per_replicate;
};

struct MleConfig {
  double grid_lo = -2.0;
  double grid_hi = 2.0;
  double grid_step = 0.1;
  PsiId psi = PsiId::psi2;
};

/// The event that the sample mean is not an observation and
/// max_i X_i >= sqrt(log 4n) > |mean|.
bool mle_event(const std::vector<double>& x);

/// Maximum likelihood versus rho-estimation on the density family
/// theta -> p_theta w.r.t. N(0,1) whose theta > 0 members carry a spike at
/// x = theta. Candidates are the theta grid, the observations and the mean.
MleReport mle_counterexample(double theta, std::size_t n, std::size_t reps, std::uint64_t seed,
                             const MleConfig& config = {}, Exec exec = Exec::parallel);

}  // namespace rho
