#include "rho/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rho/errors.hpp"

namespace rho {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Inverse CDF of the piecewise-linear density through (x_k, v_k).
double piecewise_linear_quantile(const std::vector<double>& x, const std::vector<double>& v,
                                 double u) {
  std::vector<double> cum(x.size(), 0.0);
  for (std::size_t k = 1; k < x.size(); ++k) {
    cum[k] = cum[k - 1] + 0.5 * (v[k - 1] + v[k]) * (x[k] - x[k - 1]);
  }
  const double target = u * cum.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), target);
  std::size_t k = static_cast<std::size_t>(std::distance(cum.begin(), it));
  if (k == 0) return x.front();
  if (k >= x.size()) return x.back();
  --k;
  const double h = x[k + 1] - x[k];
  const double slope = (v[k + 1] - v[k]) / h;
  const double rem = target - cum[k];
  double t;
  if (std::abs(slope) < 1e-14 * std::max(1.0, v[k])) {
    t = v[k] > 0.0 ? rem / v[k] : 0.0;
  } else {
    // v_k t + slope t^2 / 2 = rem
    const double disc = std::max(0.0, v[k] * v[k] + 2.0 * slope * rem);
    t = 2.0 * rem / (v[k] + std::sqrt(disc));
  }
  return x[k] + std::clamp(t, 0.0, h);
}

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64_mix(seed + kGolden) ^ splitmix64_mix(~stream * kGolden)) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * kGolden);
}

double CounterRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double a = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double draw(const Density1D& p, CounterRng& rng) {
  const double off = p.offset();
  switch (p.kind()) {
    case Density1D::Kind::gaussian: {
      const auto& g = std::get<dens::Gaussian>(p.params());
      return off + g.mean + g.sd * rng.normal();
    }
    case Density1D::Kind::pathological_gaussian: {
      const auto& g = std::get<dens::PathologicalGaussian>(p.params());
      return off + g.theta + rng.normal();
    }
    case Density1D::Kind::cauchy: {
      const auto& c = std::get<dens::Cauchy>(p.params());
      return off + c.loc + c.scale * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
    }
    case Density1D::Kind::laplace: {
      const auto& l = std::get<dens::Laplace>(p.params());
      const double u = rng.uniform() - 0.5;
      return off + l.loc - l.scale * std::copysign(std::log1p(-2.0 * std::abs(u)), u);
    }
    case Density1D::Kind::uniform: {
      const auto& un = std::get<dens::Uniform>(p.params());
      return off + un.a + (un.b - un.a) * rng.uniform();
    }
    case Density1D::Kind::exponential: {
      const auto& e = std::get<dens::Exponential>(p.params());
      return off + e.shift - std::log(rng.uniform()) / e.rate;
    }
    case Density1D::Kind::histogram: {
      const auto& h = std::get<dens::Histogram>(p.params());
      const double u = rng.uniform();
      double cum = 0.0;
      std::size_t last = 0;
      for (std::size_t k = 0; k + 1 < h.breaks.size(); ++k) {
        const double width = h.breaks[k + 1] - h.breaks[k];
        const double mass = h.heights[k] * width;
        if (mass <= 0.0) continue;
        last = k;
        if (u < cum + mass) return off + h.breaks[k] + (u - cum) / h.heights[k];
        cum += mass;
      }
      // Rounding left u beyond the accumulated mass.
      return off + h.breaks[last + 1];
    }
    case Density1D::Kind::tabulated: {
      const auto& t = std::get<dens::Tabulated>(p.params());
      return off + piecewise_linear_quantile(t.grid, t.values, rng.uniform());
    }
    case Density1D::Kind::exp_family: {
      const auto& e = std::get<dens::ExpFamily>(p.params());
      constexpr std::size_t cells = 4096;
      std::vector<double> x(cells + 1);
      std::vector<double> v(cells + 1);
      for (std::size_t k = 0; k <= cells; ++k) {
        x[k] = e.lo + (e.hi - e.lo) * static_cast<double>(k) / static_cast<double>(cells);
        v[k] = std::exp(e.exponent(x[k]) - e.log_normalizer);
        if (!std::isfinite(v[k])) v[k] = 0.0;
      }
      return off + piecewise_linear_quantile(x, v, rng.uniform());
    }
  }
  throw ContractViolation("draw: unsupported density kind");
}

}  // namespace rho
