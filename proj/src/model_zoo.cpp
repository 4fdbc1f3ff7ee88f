#include "rho/model_zoo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rho/errors.hpp"
#include "rho/hellinger.hpp"

namespace rho {

namespace {

double log_plus(double v) { return v > 1.0 ? std::log(v) : 0.0; }

double apply_cap(double bound, std::size_t n) {
  return std::max(1.0, std::min(bound, static_cast<double>(n) / 6.0));
}

}  // namespace

std::string to_string(BoundSource s) {
  switch (s) {
    case BoundSource::finite:
      return "finite";
    case BoundSource::vc:
      return "vc";
    case BoundSource::entropy:
      return "entropy";
    case BoundSource::user:
      return "user";
  }
  return "user";
}

BoundSource bound_source_from_string(const std::string& s) {
  for (BoundSource b : {BoundSource::finite, BoundSource::vc, BoundSource::entropy, BoundSource::user}) {
    if (to_string(b) == s) return b;
  }
  throw ContractViolation("unknown bound source '" + s + "'");
}

double dimension_bound_finite(std::size_t cardinality) {
  if (cardinality == 0) throw ContractViolation("dimension_bound_finite: cardinality must be >= 1");
  return std::max(1.0, 9.0 * std::log(2.0 * static_cast<double>(cardinality)));
}

double dimension_bound_vc(double vc_index, std::size_t n, double c1,
                          std::vector<std::string>* warnings) {
  if (!(vc_index >= 1.0) || n == 0 || !(c1 > 0.0)) {
    throw ContractViolation("dimension_bound_vc: need V >= 1, n >= 1, C1 > 0");
  }
  const double nd = static_cast<double>(n);
  const double cap = nd / 6.0;
  if (vc_index > nd) {
    if (warnings) {
      std::ostringstream os;
      os << "VC index " << vc_index << " exceeds n = " << n << "; clamped to the n/6 cap";
      warnings->push_back(os.str());
    }
    return std::max(1.0, cap);
  }
  const double raw = c1 * vc_index * (1.0 + log_plus(nd / vc_index));
  return std::max(1.0, std::min(raw, cap));
}

double dimension_bound_entropy(double V) {
  if (!(V >= 0.0)) throw ContractViolation("dimension_bound_entropy: V must be >= 0");
  return 18.0 * std::max(1.0, V * std::numbers::ln2 / 2.0);
}

double eta_x0(const PsiKernel& k) {
  const double a2 = std::sqrt(k.a2_sq);
  return std::numbers::sqrt2 * (std::sqrt(1.0 + k.beta / a2) + 1.0);
}

double eta_bar_finite(const DensityFamily& fam, const PsiKernel& k,
                      const DensityFamily& center_pool, const QuadratureSpec& quad) {
  if (fam.empty() || center_pool.empty()) {
    throw ContractViolation("eta_bar_finite: family and center pool must be nonempty");
  }
  const double x0 = eta_x0(k);
  // Distances from every center to every entry, sorted per center.
  std::vector<std::vector<double>> dist(center_pool.size());
  std::vector<double> all;
  for (std::size_t c = 0; c < center_pool.size(); ++c) {
    for (std::size_t e = 0; e < fam.size(); ++e) {
      const double d = std::sqrt(product_hellinger_sq(center_pool.entry(c), fam.entry(e), quad));
      dist[c].push_back(d);
      all.push_back(d);
    }
    std::sort(dist[c].begin(), dist[c].end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  // H(y) = max_c log+(2 #{e : d(c,e) <= y}), a right-continuous step function.
  const auto H = [&](double y) {
    std::size_t best = 0;
    for (const auto& d : dist) {
      best = std::max(best, static_cast<std::size_t>(std::upper_bound(d.begin(), d.end(), y) - d.begin()));
    }
    return log_plus(2.0 * static_cast<double>(best));
  };

  // On each piece [z_k, z_{k+1}) H is constant, and the condition reads z < x0 sqrt(H).
  double eta = 0.0;
  const auto consider = [&](double a, double b, double h) {
    const double limit = x0 * std::sqrt(h);
    if (a < limit) eta = std::max(eta, std::min(b, limit));
  };
  consider(0.0, all.empty() || all.front() <= 0.0 ? 0.0 : k.beta * all.front(), H(0.0));
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double a = k.beta * all[i];
    const double b = i + 1 < all.size() ? k.beta * all[i + 1] : std::numeric_limits<double>::infinity();
    consider(a, b, H(all[i]));
  }
  return eta;
}

double eta_bar_finite(const DensityFamily& fam, const PsiKernel& k, const QuadratureSpec& quad) {
  return eta_bar_finite(fam, k, fam, quad);
}

ModelDescriptor build_gaussian_location_grid(double theta_min, double theta_max, double step,
                                             double sd, std::size_t n, double c1) {
  if (!(step > 0.0) || !(theta_min < theta_max) || !std::isfinite(theta_min) ||
      !std::isfinite(theta_max)) {
    throw ContractViolation("gaussian grid: need step > 0 and theta_min < theta_max");
  }
  if (!(sd > 0.0)) throw ContractViolation("gaussian grid: sd must be > 0");
  if (n == 0) throw ContractViolation("gaussian grid: n must be >= 1");
  std::vector<ProductDensity> entries;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> params;
  const auto count = static_cast<std::size_t>(std::floor((theta_max - theta_min) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    double theta = theta_min + static_cast<double>(k) * step;
    if (std::abs(theta) < 1e-12 * step) theta = 0.0;
    entries.push_back(ProductDensity::iid(Density1D::gaussian(theta, sd), n));
    std::ostringstream os;
    os << "theta=" << theta;
    labels.push_back(os.str());
    params.push_back({theta});
  }
  if (entries.empty()) throw ContractViolation("gaussian grid: empty grid");
  ModelDescriptor m;
  m.name = "gaussian_location_grid";
  m.family = DensityFamily(std::move(entries), std::move(labels), std::move(params));
  m.vc_index = 3.0;
  m.vc_provenance = "one-parameter exponential family: J + 2 with J = 1";
  m.family.set_vc_index(3.0);
  m.bound_source = BoundSource::vc;
  m.dim_bound = dimension_bound_vc(3.0, n, c1, &m.diagnostics);
  return m;
}

std::vector<HistogramCandidate> histogram_simplex_candidates(
    const std::vector<std::vector<double>>& breakpoint_grids, std::size_t simplex_points) {
  if (simplex_points < 1) throw ContractViolation("histogram grid: simplex_points must be >= 1");
  std::vector<HistogramCandidate> out;
  for (const auto& breaks : breakpoint_grids) {
    if (breaks.size() < 2) throw ContractViolation("histogram grid: need >= 2 breakpoints");
    const std::size_t bins = breaks.size() - 1;
    const std::size_t total = simplex_points > 1 ? simplex_points - 1 : 0;
    if (bins == 1) {
      out.push_back({breaks, {1.0 / (breaks[1] - breaks[0])}});
      continue;
    }
    if (total == 0) continue;
    // Every composition of `total` into `bins` nonnegative parts.
    std::vector<std::size_t> parts(bins, 0);
    const auto emit = [&]() {
      HistogramCandidate c{breaks, std::vector<double>(bins)};
      for (std::size_t b = 0; b < bins; ++b) {
        const double mass = static_cast<double>(parts[b]) / static_cast<double>(total);
        c.heights[b] = mass / (breaks[b + 1] - breaks[b]);
      }
      out.push_back(std::move(c));
    };
    const auto recurse = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
      if (pos + 1 == bins) {
        parts[pos] = left;
        emit();
        return;
      }
      for (std::size_t v = left + 1; v-- > 0;) {
        parts[pos] = v;
        self(self, pos + 1, left - v);
      }
    };
    recurse(recurse, 0, total);
  }
  return out;
}

ModelDescriptor build_histogram_family(const std::vector<HistogramCandidate>& candidates,
                                       std::size_t k, std::size_t n, double c1) {
  if (candidates.empty()) throw ContractViolation("histogram family: no candidates");
  if (k == 0 || n == 0) throw ContractViolation("histogram family: need k >= 1 and n >= 1");
  std::vector<ProductDensity> entries;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> params;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const HistogramCandidate& h = candidates[c];
    if (h.heights.size() > k) {
      std::ostringstream os;
      os << "histogram family: candidate " << c << " has " << h.heights.size()
         << " pieces, more than k = " << k;
      throw ContractViolation(os.str());
    }
    // Throws on unnormalized heights.
    Density1D d = Density1D::histogram(h.breaks, h.heights);
    entries.push_back(ProductDensity::iid(std::move(d), n));
    std::ostringstream os;
    os << "hist#" << c;
    labels.push_back(os.str());
    params.push_back(h.heights);
  }
  ModelDescriptor m;
  m.name = "histogram_family";
  m.family = DensityFamily(std::move(entries), std::move(labels), std::move(params));
  const double vc = 2.0 * static_cast<double>(k) + 1.0;
  m.vc_index = vc;
  m.vc_provenance = "piecewise constant with k pieces: dimension 2k";
  m.family.set_vc_index(vc);
  m.bound_source = BoundSource::vc;
  m.dim_bound = dimension_bound_vc(vc, n, c1, &m.diagnostics);
  return m;
}

ModelDescriptor build_histogram_family(const std::vector<std::vector<double>>& breakpoint_grids,
                                       std::size_t k, std::size_t simplex_points, std::size_t n,
                                       double c1) {
  return build_histogram_family(histogram_simplex_candidates(breakpoint_grids, simplex_points), k,
                                n, c1);
}

ModelDescriptor build_exp_family_grid(const std::vector<dens::BasisTerm>& basis, double lo,
                                      double hi,
                                      const std::vector<std::vector<double>>& coefficient_grid,
                                      std::size_t n, double c1, const QuadratureSpec& quad) {
  if (basis.empty()) throw ContractViolation("exp family: need J >= 1 basis functions");
  if (n == 0) throw ContractViolation("exp family: n must be >= 1");
  ModelDescriptor m;
  m.name = "exp_family_grid";
  std::vector<ProductDensity> entries;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> params;
  for (std::size_t c = 0; c < coefficient_grid.size(); ++c) {
    const auto& coef = coefficient_grid[c];
    if (coef.size() != basis.size()) {
      throw ContractViolation("exp family: coefficient vector length differs from J");
    }
    try {
      Density1D d = Density1D::exp_family(basis, coef, lo, hi, quad);
      labels.push_back(d.describe());
      entries.push_back(ProductDensity::iid(std::move(d), n));
      params.push_back(coef);
    } catch (const NumericalFailure& e) {
      std::ostringstream os;
      os << "rejected coefficient vector #" << c << ": " << e.what();
      m.diagnostics.push_back(os.str());
    }
  }
  if (entries.empty()) {
    throw ContractViolation("exp family: every coefficient vector was rejected");
  }
  m.family = DensityFamily(std::move(entries), std::move(labels), std::move(params));
  const double vc = static_cast<double>(basis.size()) + 2.0;
  m.vc_index = vc;
  m.vc_provenance = "exponential family on J functions: J + 2";
  m.family.set_vc_index(vc);
  m.bound_source = BoundSource::vc;
  m.dim_bound = dimension_bound_vc(vc, n, c1, &m.diagnostics);
  return m;
}

ModelDescriptor build_finite_model(const std::vector<Density1D>& densities, std::size_t n,
                                   std::string name) {
  if (densities.empty()) throw ContractViolation("finite model: no densities");
  if (n == 0) throw ContractViolation("finite model: n must be >= 1");
  std::vector<ProductDensity> entries;
  for (const Density1D& d : densities) entries.push_back(ProductDensity::iid(d, n));
  ModelDescriptor m;
  m.name = std::move(name);
  m.family = DensityFamily(std::move(entries));
  m.bound_source = BoundSource::finite;
  m.dim_bound = apply_cap(dimension_bound_finite(densities.size()), n);
  return m;
}

}  // namespace rho
