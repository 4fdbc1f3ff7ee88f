#include "rho/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rho/errors.hpp"

namespace rho {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
  if (!ok) throw ContractViolation(msg);
}

bool finite(double v) { return std::isfinite(v); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double log_tabulated(const dens::Tabulated& t, double x) {
  const auto& g = t.grid;
  if (x < g.front() || x > g.back()) return kNegInf;
  auto it = std::upper_bound(g.begin(), g.end(), x);
  if (it == g.end()) return t.values.back() > 0.0 ? std::log(t.values.back()) : kNegInf;
  const std::size_t k = static_cast<std::size_t>(it - g.begin());
  const double x0 = g[k - 1];
  const double x1 = g[k];
  const double w = (x - x0) / (x1 - x0);
  const double v = (1.0 - w) * t.values[k - 1] + w * t.values[k];
  return v > 0.0 ? std::log(v) : kNegInf;
}

double log_histogram(const dens::Histogram& h, double x) {
  const auto& b = h.breaks;
  if (x < b.front() || x > b.back()) return kNegInf;
  auto it = std::upper_bound(b.begin(), b.end(), x);
  std::size_t bin = (it == b.end()) ? h.heights.size() - 1 : static_cast<std::size_t>(it - b.begin()) - 1;
  const double v = h.heights[bin];
  return v > 0.0 ? std::log(v) : kNegInf;
}

std::vector<double> default_probe(double lo, double hi) {
  std::vector<double> pts;
  const double a = std::isfinite(lo) ? lo : std::min(-64.0, hi - 64.0);
  const double b = std::isfinite(hi) ? hi : std::max(64.0, lo + 64.0);
  const int steps = 512;
  for (int k = 0; k <= steps; ++k) {
    pts.push_back(a + (b - a) * static_cast<double>(k) / steps);
  }
  return pts;
}

}  // namespace

std::string to_string(BaseMeasure m) {
  switch (m) {
    case BaseMeasure::lebesgue:
      return "lebesgue";
    case BaseMeasure::standard_gaussian:
      return "standard_gaussian";
  }
  return "unknown";
}

double log_std_normal_pdf(double x) {
  return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
}

namespace dens {

BasisTerm BasisTerm::parse(const std::string& text) {
  BasisTerm t;
  if (text == "x") {
    t.type = Type::power;
    t.power = 1;
  } else if (text.rfind("x^", 0) == 0) {
    t.type = Type::power;
    try {
      std::size_t used = 0;
      t.power = std::stoi(text.substr(2), &used);
      if (used != text.size() - 2) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ContractViolation("basis term '" + text + "': bad exponent");
    }
    require(t.power >= 1, "basis term '" + text + "': exponent must be >= 1");
  } else if (text == "log(x)") {
    t.type = Type::log;
  } else if (text == "abs(x)") {
    t.type = Type::abs;
  } else {
    throw ContractViolation("unknown basis term '" + text + "' (expected x, x^k, log(x), abs(x))");
  }
  return t;
}

std::string BasisTerm::to_string() const {
  switch (type) {
    case Type::power:
      return power == 1 ? "x" : "x^" + std::to_string(power);
    case Type::log:
      return "log(x)";
    case Type::abs:
      return "abs(x)";
  }
  return "?";
}

double BasisTerm::operator()(double x) const {
  switch (type) {
    case Type::power:
      return std::pow(x, power);
    case Type::log:
      return x > 0.0 ? std::log(x) : kNegInf;
    case Type::abs:
      return std::abs(x);
  }
  return 0.0;
}

double ExpFamily::exponent(double x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (coef[j] == 0.0) continue;
    s += coef[j] * basis[j](x);
  }
  return s;
}

}  // namespace dens

Density1D Density1D::gaussian(double mean, double sd) {
  require(finite(mean) && finite(sd) && sd > 0.0, "gaussian: need finite mean and sd > 0");
  return Density1D(dens::Gaussian{mean, sd});
}

Density1D Density1D::cauchy(double loc, double scale) {
  require(finite(loc) && finite(scale) && scale > 0.0, "cauchy: need finite loc and scale > 0");
  return Density1D(dens::Cauchy{loc, scale});
}

Density1D Density1D::laplace(double loc, double scale) {
  require(finite(loc) && finite(scale) && scale > 0.0, "laplace: need finite loc and scale > 0");
  return Density1D(dens::Laplace{loc, scale});
}

Density1D Density1D::uniform(double a, double b) {
  require(finite(a) && finite(b) && a < b, "uniform: need finite a < b");
  return Density1D(dens::Uniform{a, b});
}

Density1D Density1D::exponential(double rate, double shift) {
  require(finite(rate) && rate > 0.0 && finite(shift), "exponential: need rate > 0, finite shift");
  return Density1D(dens::Exponential{rate, shift});
}

Density1D Density1D::histogram(std::vector<double> breaks, std::vector<double> heights) {
  require(breaks.size() >= 2, "histogram: need at least two breakpoints");
  require(heights.size() + 1 == breaks.size(), "histogram: need one height per bin");
  double mass = 0.0;
  for (std::size_t k = 0; k < heights.size(); ++k) {
    require(finite(breaks[k]) && finite(breaks[k + 1]) && breaks[k] < breaks[k + 1],
            "histogram: breakpoints must be finite and strictly increasing");
    require(finite(heights[k]) && heights[k] >= 0.0, "histogram: heights must be >= 0");
    mass += heights[k] * (breaks[k + 1] - breaks[k]);
  }
  if (std::abs(mass - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "histogram: total mass " << mass << " differs from 1";
    throw ContractViolation(os.str());
  }
  return Density1D(dens::Histogram{std::move(breaks), std::move(heights)});
}

Density1D Density1D::exp_family(std::vector<dens::BasisTerm> basis, std::vector<double> coef,
                                double lo, double hi, const QuadratureSpec& quad) {
  require(!basis.empty(), "exp_family: need at least one basis function");
  require(basis.size() == coef.size(), "exp_family: one coefficient per basis function");
  require(!std::isnan(lo) && !std::isnan(hi) && lo < hi, "exp_family: need lo < hi");
  for (double c : coef) require(finite(c), "exp_family: coefficients must be finite");
  for (const auto& b : basis) {
    if (b.type == dens::BasisTerm::Type::log) {
      require(lo >= 0.0, "exp_family: log(x) basis requires a domain in [0, inf)");
    }
  }
  dens::ExpFamily ef{std::move(basis), std::move(coef), lo, hi, 0.0};

  double peak = kNegInf;
  for (double x : default_probe(lo, hi)) {
    const double e = ef.exponent(x);
    if (std::isfinite(e)) peak = std::max(peak, e);
  }
  if (!std::isfinite(peak)) {
    throw NumericalFailure("exp_family: exponent is not finite anywhere on the probe grid");
  }
  // Infinite ends must make the exponent decay well below its peak.
  for (double far : {lo, hi}) {
    if (std::isfinite(far)) continue;
    const double sign = far > 0 ? 1.0 : -1.0;
    for (double r : {1e3, 1e5}) {
      const double e = ef.exponent(sign * r);
      if (!(e < peak - 40.0)) {
        throw NumericalFailure("exp_family: normalizer diverges (exponent does not decay toward " +
                               std::string(sign > 0 ? "+inf" : "-inf") + ")");
      }
    }
  }
  std::vector<double> bps{lo};
  for (double x : {-64.0, -16.0, -4.0, 0.0, 4.0, 16.0, 64.0}) {
    if (x > lo && x < hi) bps.push_back(x);
  }
  bps.push_back(hi);
  const auto integrand = [&](double x) {
    const double e = ef.exponent(x);
    return std::isfinite(e) ? std::exp(e - peak) : 0.0;
  };
  QuadratureSpec q = quad;
  const QuadratureResult r = integrate(integrand, bps, q);
  if (!(r.value > 0.0) || !std::isfinite(r.value)) {
    throw NumericalFailure("exp_family: normalizer is not a positive finite number");
  }
  ef.log_normalizer = peak + std::log(r.value);
  return Density1D(std::move(ef));
}

Density1D Density1D::pathological_gaussian(double theta) {
  require(finite(theta), "pathological_gaussian: theta must be finite");
  return Density1D(dens::PathologicalGaussian{theta});
}

Density1D Density1D::tabulated(std::vector<double> grid, std::vector<double> values) {
  require(grid.size() >= 2 && grid.size() == values.size(),
          "tabulated: need >= 2 grid points and one value per point");
  double mass = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    require(finite(grid[k]) && finite(values[k]) && values[k] >= 0.0,
            "tabulated: grid and values must be finite, values >= 0");
    if (k > 0) {
      require(grid[k] > grid[k - 1], "tabulated: grid must be strictly increasing");
      mass += 0.5 * (values[k] + values[k - 1]) * (grid[k] - grid[k - 1]);
    }
  }
  require(mass > 0.0, "tabulated: values integrate to zero");
  for (double& v : values) v /= mass;
  return Density1D(dens::Tabulated{std::move(grid), std::move(values)});
}

Density1D::Kind Density1D::kind() const { return static_cast<Kind>(params_.index()); }

BaseMeasure Density1D::base() const {
  return kind() == Kind::pathological_gaussian ? BaseMeasure::standard_gaussian
                                               : BaseMeasure::lebesgue;
}

double Density1D::log_density(double x_in) const {
  const double x = x_in - offset_;
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  return std::visit(
      Overloaded{
          [x](const dens::Gaussian& g) {
            const double z = (x - g.mean) / g.sd;
            return -0.5 * z * z - std::log(g.sd) - 0.5 * std::log(2.0 * std::numbers::pi);
          },
          [x](const dens::Cauchy& c) {
            const double z = (x - c.loc) / c.scale;
            return -std::log(std::numbers::pi * c.scale) - std::log1p(z * z);
          },
          [x](const dens::Laplace& l) {
            return -std::abs(x - l.loc) / l.scale - std::log(2.0 * l.scale);
          },
          [x](const dens::Uniform& u) {
            return (x >= u.a && x <= u.b) ? -std::log(u.b - u.a) : kNegInf;
          },
          [x](const dens::Exponential& e) {
            return x >= e.shift ? std::log(e.rate) - e.rate * (x - e.shift) : kNegInf;
          },
          [x](const dens::Histogram& h) { return log_histogram(h, x); },
          [x](const dens::ExpFamily& f) {
            if (x < f.lo || x > f.hi) return kNegInf;
            const double e = f.exponent(x);
            return std::isnan(e) ? kNegInf : e - f.log_normalizer;
          },
          [x](const dens::PathologicalGaussian& p) {
            const double t = p.theta;
            double v = t * x - 0.5 * t * t;
            // Singular version: active only at x == theta exactly, theta > 0.
            if (t > 0.0 && x == t) v += 0.5 * t * t * std::exp(x * x);
            return v;
          },
          [x](const dens::Tabulated& t) { return log_tabulated(t, x); },
      },
      params_);
}

double Density1D::density(double x) const { return std::exp(log_density(x)); }

double Density1D::log_lebesgue_density(double x) const {
  const double l = log_density(x);
  if (base() == BaseMeasure::standard_gaussian) return l + log_std_normal_pdf(x);
  return l;
}

double Density1D::lebesgue_density(double x) const { return std::exp(log_lebesgue_density(x)); }

Support Density1D::support() const {
  Support s = std::visit(
      Overloaded{
          [](const dens::Gaussian& g) {
            return Support{kNegInf, kInf,
                           {g.mean - 40 * g.sd, g.mean - 6 * g.sd, g.mean, g.mean + 6 * g.sd,
                            g.mean + 40 * g.sd}};
          },
          [](const dens::Cauchy& c) {
            return Support{kNegInf, kInf,
                           {c.loc - 1e3 * c.scale, c.loc - 20 * c.scale, c.loc,
                            c.loc + 20 * c.scale, c.loc + 1e3 * c.scale}};
          },
          [](const dens::Laplace& l) {
            return Support{kNegInf, kInf, {l.loc - 60 * l.scale, l.loc, l.loc + 60 * l.scale}};
          },
          [](const dens::Uniform& u) { return Support{u.a, u.b, {u.a, u.b}}; },
          [](const dens::Exponential& e) {
            return Support{e.shift, kInf, {e.shift, e.shift + 60.0 / e.rate}};
          },
          [](const dens::Histogram& h) {
            return Support{h.breaks.front(), h.breaks.back(), h.breaks};
          },
          [](const dens::ExpFamily& f) {
            Support out{f.lo, f.hi, {}};
            if (std::isfinite(f.lo)) out.breakpoints.push_back(f.lo);
            for (double x : {-64.0, -16.0, -4.0, 0.0, 4.0, 16.0, 64.0}) {
              if (x > f.lo && x < f.hi) out.breakpoints.push_back(x);
            }
            if (std::isfinite(f.hi)) out.breakpoints.push_back(f.hi);
            return out;
          },
          [](const dens::PathologicalGaussian& p) {
            return Support{kNegInf, kInf,
                           {p.theta - 40, p.theta - 6, p.theta, p.theta + 6, p.theta + 40}};
          },
          [](const dens::Tabulated& t) {
            Support out{t.grid.front(), t.grid.back(), {}};
            if (t.grid.size() <= 4096) {
              out.breakpoints = t.grid;
            } else {
              out.breakpoints = {t.grid.front(), t.grid.back()};
            }
            return out;
          },
      },
      params_);
  if (offset_ != 0.0) {
    s.lo += offset_;
    s.hi += offset_;
    for (double& b : s.breakpoints) b += offset_;
  }
  return s;
}

Density1D Density1D::shifted(double c) const {
  require(finite(c), "shifted: shift must be finite");
  Density1D out = *this;
  out.offset_ += c;
  return out;
}

bool Density1D::unimodal() const {
  switch (kind()) {
    case Kind::gaussian:
    case Kind::cauchy:
    case Kind::laplace:
    case Kind::uniform:
    case Kind::exponential:
      return true;
    default:
      return false;
  }
}

std::string Density1D::describe() const {
  std::ostringstream os;
  os.precision(6);
  std::visit(Overloaded{
                 [&](const dens::Gaussian& g) { os << "gaussian(" << g.mean << "," << g.sd << ")"; },
                 [&](const dens::Cauchy& c) { os << "cauchy(" << c.loc << "," << c.scale << ")"; },
                 [&](const dens::Laplace& l) { os << "laplace(" << l.loc << "," << l.scale << ")"; },
                 [&](const dens::Uniform& u) { os << "uniform(" << u.a << "," << u.b << ")"; },
                 [&](const dens::Exponential& e) {
                   os << "exponential(" << e.rate << "," << e.shift << ")";
                 },
                 [&](const dens::Histogram& h) { os << "histogram(" << h.heights.size() << " bins)"; },
                 [&](const dens::ExpFamily& f) {
                   os << "exp_family(";
                   for (std::size_t j = 0; j < f.coef.size(); ++j) {
                     os << (j ? "," : "") << f.coef[j] << "*" << f.basis[j].to_string();
                   }
                   os << ")";
                 },
                 [&](const dens::PathologicalGaussian& p) {
                   os << "pathological_gaussian(" << p.theta << ")";
                 },
                 [&](const dens::Tabulated& t) { os << "tabulated(" << t.grid.size() << " pts)"; },
             },
             params_);
  if (offset_ != 0.0) os << "+shift(" << offset_ << ")";
  return os.str();
}

bool Density1D::operator==(const Density1D& other) const {
  return offset_ == other.offset_ && params_ == other.params_;
}

std::string to_string(Density1D::Kind k) {
  switch (k) {
    case Density1D::Kind::gaussian:
      return "gaussian";
    case Density1D::Kind::cauchy:
      return "cauchy";
    case Density1D::Kind::laplace:
      return "laplace";
    case Density1D::Kind::uniform:
      return "uniform";
    case Density1D::Kind::exponential:
      return "exponential";
    case Density1D::Kind::histogram:
      return "histogram";
    case Density1D::Kind::exp_family:
      return "exp_family";
    case Density1D::Kind::pathological_gaussian:
      return "pathological_gaussian";
    case Density1D::Kind::tabulated:
      return "tabulated";
  }
  return "unknown";
}

Density1D::Kind kind_from_string(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(Density1D::Kind::tabulated); ++k) {
    const auto kind = static_cast<Density1D::Kind>(k);
    if (to_string(kind) == s) return kind;
  }
  throw ContractViolation("unknown density kind '" + s + "'");
}

}  // namespace rho
