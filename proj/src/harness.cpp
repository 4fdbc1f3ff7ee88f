#include "rho/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rho/criterion.hpp"
#include "rho/errors.hpp"
#include "rho/hellinger.hpp"

namespace rho {

Scenario Scenario::iid(Density1D p, std::size_t n, std::size_t replications, std::uint64_t seed) {
  Scenario s;
  s.kind = Kind::iid;
  s.center = std::move(p);
  s.n = n;
  s.replications = replications;
  s.seed = seed;
  s.validate();
  return s;
}

Scenario Scenario::contaminated(Density1D center, Density1D contamination, double epsilon,
                                std::size_t n, std::size_t replications, std::uint64_t seed) {
  Scenario s;
  s.kind = Kind::contaminated;
  s.center = std::move(center);
  s.contamination = std::move(contamination);
  s.epsilon = epsilon;
  s.n = n;
  s.replications = replications;
  s.seed = seed;
  s.validate();
  return s;
}

Scenario Scenario::outliers(Density1D p, std::vector<std::size_t> indices,
                            std::vector<double> points, std::size_t n, std::size_t replications,
                            std::uint64_t seed) {
  Scenario s;
  s.kind = Kind::outliers;
  s.center = std::move(p);
  s.outlier_indices = std::move(indices);
  s.outlier_points = std::move(points);
  s.n = n;
  s.replications = replications;
  s.seed = seed;
  s.validate();
  return s;
}

void Scenario::validate() const {
  if (n == 0) throw ContractViolation("scenario: n must be >= 1");
  if (replications == 0) throw ContractViolation("scenario: replications must be >= 1");
  switch (kind) {
    case Kind::iid:
      break;
    case Kind::contaminated:
      if (!contamination) throw ContractViolation("scenario: contamination density missing");
      // epsilon = 1 is accepted so a scenario can draw from R alone.
      if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ContractViolation("scenario: epsilon must lie in [0, 1]");
      }
      break;
    case Kind::outliers: {
      if (outlier_indices.size() != outlier_points.size()) {
        throw ContractViolation("scenario: one point per outlier index is required");
      }
      if (outlier_indices.size() >= n) throw ContractViolation("scenario: need |J| < n");
      std::vector<std::size_t> sorted = outlier_indices;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
          (!sorted.empty() && sorted.back() >= n)) {
        throw ContractViolation("scenario: outlier indices must be distinct and < n");
      }
      for (double x : outlier_points) {
        if (!std::isfinite(x)) throw ContractViolation("scenario: outlier points must be finite");
      }
      break;
    }
  }
}

ProductDensity Scenario::truth_product() const {
  if (kind == Kind::contaminated) {
    throw ContractViolation("scenario: contaminated coordinates are mixtures, not single densities");
  }
  if (kind == Kind::iid || outlier_indices.empty()) return ProductDensity::iid(center, n);
  std::vector<Coordinate> coords(n, center);
  for (std::size_t k = 0; k < outlier_indices.size(); ++k) {
    const double x = outlier_points[k];
    coords[outlier_indices[k]] =
        Density1D::uniform(x - 0.5 * kPointMassWidth, x + 0.5 * kPointMassWidth);
  }
  return ProductDensity::of(std::move(coords));
}

Sample simulate_replicate(const Scenario& s, std::size_t replicate) {
  s.validate();
  CounterRng rng(s.seed, replicate);
  std::vector<double> x(s.n);
  switch (s.kind) {
    case Scenario::Kind::iid:
      for (double& v : x) v = draw(s.center, rng);
      break;
    case Scenario::Kind::contaminated:
      for (double& v : x) {
        const bool from_r = rng.uniform() < s.epsilon;
        v = draw(from_r ? *s.contamination : s.center, rng);
      }
      break;
    case Scenario::Kind::outliers: {
      const ProductDensity truth = s.truth_product();
      for (std::size_t i = 0; i < s.n; ++i) {
        x[i] = draw(std::get<Density1D>(truth.coordinate(i)), rng);
      }
      break;
    }
  }
  return Sample::scalars(std::move(x));
}

std::vector<Sample> simulate(const Scenario& s) {
  std::vector<Sample> out;
  out.reserve(s.replications);
  for (std::size_t r = 0; r < s.replications; ++r) out.push_back(simulate_replicate(s, r));
  return out;
}

Sample simulate_regression(const Density1D& design, const LinearPredictor& f,
                           const Density1D& error, std::size_t n, CounterRng& rng) {
  if (n == 0) throw ContractViolation("simulate_regression: n must be >= 1");
  std::vector<double> w(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = draw(design, rng);
    y[i] = f(std::span<const double>(&w[i], 1)) + draw(error, rng);
  }
  return Sample::pairs(std::move(w), std::move(y));
}

double contamination_bias_h2(const Density1D& center, const Density1D& contamination, double eps,
                             const QuadratureSpec& quad) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ContractViolation("contamination_bias_h2: eps outside [0,1]");
  const std::vector<double> bp = merged_breakpoints(center, contamination);
  const auto integrand = [&](double x) {
    const double p = center.lebesgue_density(x);
    const double mix = (1.0 - eps) * p + eps * contamination.lebesgue_density(x);
    const double d = std::sqrt(mix) - std::sqrt(p);
    return 0.5 * d * d;
  };
  return std::clamp(integrate(integrand, bp, quad).value, 0.0, 1.0);
}

Estimator rho_estimator(const ModelCollection& coll, double slack_multiplier, Exec exec) {
  return [coll, slack_multiplier, exec](const Sample& X) {
    const SelectionResult sel = select(X, coll, slack_multiplier, exec);
    const ProductDensity& p = coll.union_family().entry(sel.fit.chosen_index);
    const auto* d = std::get_if<Density1D>(&p.coordinate(0));
    if (d == nullptr || !p.is_iid()) {
      throw ContractViolation("rho_estimator: entries must be i.i.d. scalar densities");
    }
    return *d;
  };
}

Estimator gaussian_mle_estimator() {
  return [](const Sample& X) {
    const auto& v = X.values();
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / n);
    if (!(sd > 0.0) || !std::isfinite(sd)) {
      throw NumericalFailure("gaussian_mle_estimator: degenerate sample variance");
    }
    return Density1D::gaussian(mean, sd);
  };
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void summarize(RiskReport& r) {
  std::vector<double> h;
  h.reserve(r.per_replicate.size());
  for (const auto& rec : r.per_replicate) h.push_back(rec.h2);
  if (h.empty()) {
    r.mean_h2 = r.median_h2 = r.stderr_h2 = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  const double k = static_cast<double>(h.size());
  r.mean_h2 = std::accumulate(h.begin(), h.end(), 0.0) / k;
  double ss = 0.0;
  for (double v : h) ss += (v - r.mean_h2) * (v - r.mean_h2);
  r.stderr_h2 = h.size() > 1 ? std::sqrt(ss / (k - 1.0) / k) : 0.0;
  r.median_h2 = median(std::move(h));
}

RiskReport mc_risk(const Scenario& s, const Estimator& est, const Density1D& truth_for_loss,
                   const QuadratureSpec& quad, Exec exec) {
  s.validate();
  const auto reps = static_cast<std::ptrdiff_t>(s.replications);
  std::vector<ReplicateRecord> records(s.replications);
  std::vector<std::string> errors(s.replications);
  std::vector<char> ok(s.replications, 0);

  const auto run = [&](std::ptrdiff_t r) {
    const auto idx = static_cast<std::size_t>(r);
    try {
      const Sample X = simulate_replicate(s, idx);
      const Density1D fit = est(X);
      records[idx] = ReplicateRecord{idx, hellinger_sq(truth_for_loss, fit, quad), fit.describe()};
      ok[idx] = 1;
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < reps; ++r) run(r);
  } else {
    for (std::ptrdiff_t r = 0; r < reps; ++r) run(r);
  }

  RiskReport rep;
  for (std::size_t r = 0; r < s.replications; ++r) {
    if (ok[r]) {
      rep.per_replicate.push_back(std::move(records[r]));
    } else {
      rep.failed_replicates.push_back(r);
      rep.failure_messages.push_back(std::move(errors[r]));
    }
  }
  summarize(rep);
  return rep;
}

bool mle_event(const std::vector<double>& x) {
  if (x.empty()) return false;
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  if (std::find(x.begin(), x.end(), mean) != x.end()) return false;
  const double top = *std::max_element(x.begin(), x.end());
  const double level = std::sqrt(std::log(4.0 * n));
  return top >= level && level > std::abs(mean);
}

MleReport mle_counterexample(double theta, std::size_t n, std::size_t reps, std::uint64_t seed,
                             const MleConfig& config, Exec exec) {
  if (n < 3) throw ContractViolation("mle_counterexample: n must be >= 3");
  if (reps == 0) throw ContractViolation("mle_counterexample: reps must be >= 1");
  if (!std::isfinite(theta)) throw ContractViolation("mle_counterexample: theta must be finite");
  if (!(config.grid_step > 0.0) || !(config.grid_hi >= config.grid_lo)) {
    throw ContractViolation("mle_counterexample: invalid theta grid");
  }
  const PsiKernel k = kernel_constants(config.psi);
  std::vector<double> grid;
  const auto steps =
      static_cast<std::size_t>(std::floor((config.grid_hi - config.grid_lo) / config.grid_step + 1e-9));
  for (std::size_t j = 0; j <= steps; ++j) {
    grid.push_back(config.grid_lo + static_cast<double>(j) * config.grid_step);
  }

  std::vector<MleReplicate> out(reps);
  const auto run = [&](std::size_t r) {
    CounterRng rng(seed, r);
    std::vector<double> x(n);
    for (double& v : x) v = theta + rng.normal();
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);

    std::vector<double> thetas = grid;
    thetas.insert(thetas.end(), x.begin(), x.end());
    thetas.push_back(mean);
    std::vector<ProductDensity> entries;
    entries.reserve(thetas.size());
    for (double t : thetas) entries.push_back(ProductDensity::iid(Density1D::pathological_gaussian(t), n));
    const DensityFamily fam(std::move(entries));
    const Sample X = Sample::scalars(x);

    const LogDensityMatrix L = fam.evaluate(X, Exec::serial);
    std::size_t best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < L.rows(); ++j) {
      double ll = 0.0;
      for (double v : L.row(j)) ll += v;
      if (ll > best_ll) {
        best_ll = ll;
        best = j;
      }
    }
    const RhoFit fit = rho_estimate(X, fam, Penalty::zero(fam.size()), k, std::nullopt, Exec::serial);

    MleReplicate& rec = out[r];
    rec.replicate = r;
    rec.event = mle_event(x);
    rec.sample_max = *std::max_element(x.begin(), x.end());
    rec.sample_mean = mean;
    rec.mle = thetas[best];
    rec.rho_theta = thetas[fit.chosen_index];
  };
  const auto count = static_cast<std::ptrdiff_t>(reps);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < count; ++r) run(static_cast<std::size_t>(r));
  } else {
    for (std::ptrdiff_t r = 0; r < count; ++r) run(static_cast<std::size_t>(r));
  }

  MleReport rep;
  rep.theta = theta;
  rep.n = n;
  for (const MleReplicate& rec : out) {
    if (rec.event) {
      ++rep.events;
      if (rec.mle == rec.sample_max) ++rep.mle_at_max;
    }
    rep.rho_errors.push_back(std::abs(rec.rho_theta - theta));
  }
  rep.freq_event = static_cast<double>(rep.events) / static_cast<double>(reps);
  rep.freq_mle_at_max = rep.events > 0
                            ? static_cast<double>(rep.mle_at_max) / static_cast<double>(rep.events)
                            : std::numeric_limits<double>::quiet_NaN();
  rep.rho_error_median = median(rep.rho_errors);
  rep.per_replicate = std::move(out);
  return rep;
}

}  // namespace rho
