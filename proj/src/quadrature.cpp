#include "rho/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "rho/errors.hpp"

namespace rho {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

enum class Mapping { finite, lower_tail, upper_tail };

struct Piece {
  double a = 0.0;
  double b = 0.0;
  Mapping mapping = Mapping::finite;
  double edge = 0.0;
  double value = 0.0;
  double error = 0.0;

  bool operator<(const Piece& other) const { return error < other.error; }
};

class Integrand {
 public:
  explicit Integrand(const std::function<double(double)>& f) : f_(f) {}

  double operator()(double t, Mapping mapping, double edge) const {
    double v = 0.0;
    switch (mapping) {
      case Mapping::finite:
        v = f_(t);
        break;
      case Mapping::upper_tail: {
        const double s = 1.0 - t;
        v = f_(edge + t / s) / (s * s);
        break;
      }
      case Mapping::lower_tail: {
        const double s = 1.0 - t;
        v = f_(edge - t / s) / (s * s);
        break;
      }
    }
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "quadrature: integrand is not finite at mapped point t=" << t;
      throw NumericalFailure(os.str());
    }
    return v;
  }

 private:
  const std::function<double(double)>& f_;
};

void kronrod15(const Integrand& f, Piece& p) {
  constexpr double epmach = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centr = 0.5 * (p.a + p.b);
  const double hlgth = 0.5 * (p.b - p.a);
  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};

  const double fc = f(centr, p.mapping, p.edge);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = f(centr - absc, p.mapping, p.edge);
    const double f2 = f(centr + absc, p.mapping, p.edge);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = f(centr - absc, p.mapping, p.edge);
    const double f2 = f(centr + absc, p.mapping, p.edge);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double ah = std::abs(hlgth);
  resasc *= ah;
  resabs *= ah;
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > uflow / (50.0 * epmach)) {
    err = std::max(epmach * 50.0 * resabs, err);
  }
  p.value = resk * hlgth;
  p.error = err;
}

std::vector<Piece> initial_pieces(std::span<const double> bp) {
  if (bp.size() < 2) {
    throw ContractViolation("quadrature: at least two breakpoints are required");
  }
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const double lo = bp[k];
    const double hi = bp[k + 1];
    if (std::isnan(lo) || std::isnan(hi) || !(lo <= hi)) {
      throw ContractViolation("quadrature: breakpoints must be sorted and not NaN");
    }
    if (lo == hi) continue;
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (lo_inf && hi_inf) {
      pieces.push_back({0.0, 1.0, Mapping::lower_tail, 0.0});
      pieces.push_back({0.0, 1.0, Mapping::upper_tail, 0.0});
    } else if (lo_inf) {
      pieces.push_back({0.0, 1.0, Mapping::lower_tail, hi});
    } else if (hi_inf) {
      pieces.push_back({0.0, 1.0, Mapping::upper_tail, lo});
    } else {
      pieces.push_back({lo, hi, Mapping::finite, 0.0});
    }
  }
  return pieces;
}

bool splittable(const Piece& p) {
  const double mid = 0.5 * (p.a + p.b);
  const double scale = std::max({std::abs(p.a), std::abs(p.b), 1e-300});
  return (p.b - p.a) > 64.0 * std::numeric_limits<double>::epsilon() * scale && mid > p.a &&
         mid < p.b;
}

QuadratureResult integrate_fixed(const Integrand& f, std::vector<Piece> pieces,
                                 const QuadratureSpec& spec) {
  QuadratureResult out;
  for (const Piece& seg : pieces) {
    const double width = (seg.b - seg.a) / static_cast<double>(spec.fixed_panels);
    for (std::size_t k = 0; k < spec.fixed_panels; ++k) {
      Piece p{seg.a + width * static_cast<double>(k), seg.a + width * static_cast<double>(k + 1),
              seg.mapping, seg.edge};
      if (k + 1 == spec.fixed_panels) p.b = seg.b;
      kronrod15(f, p);
      out.value += p.value;
      out.abs_error += p.error;
      ++out.subdivisions;
    }
  }
  return out;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw ContractViolation("QuadratureSpec: abs_tol must be positive and finite");
  }
  if (max_subdivisions == 0) {
    throw ContractViolation("QuadratureSpec: max_subdivisions must be positive");
  }
  if (scheme == Scheme::fixed_grid && fixed_panels == 0) {
    throw ContractViolation("QuadratureSpec: fixed_panels must be positive");
  }
}

QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints, const QuadratureSpec& spec) {
  spec.validate();
  const Integrand integrand(f);
  std::vector<Piece> pieces = initial_pieces(breakpoints);
  if (spec.scheme == QuadratureSpec::Scheme::fixed_grid) {
    return integrate_fixed(integrand, std::move(pieces), spec);
  }

  std::priority_queue<Piece> active;
  std::vector<Piece> frozen;
  double total_error = 0.0;
  for (Piece& p : pieces) {
    kronrod15(integrand, p);
    total_error += p.error;
    active.push(p);
  }

  std::size_t subdivisions = 0;
  while (total_error > spec.abs_tol && !active.empty()) {
    Piece worst = active.top();
    active.pop();
    if (!splittable(worst)) {
      frozen.push_back(worst);
      continue;
    }
    if (subdivisions >= spec.max_subdivisions) {
      active.push(worst);
      break;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Piece left{worst.a, mid, worst.mapping, worst.edge};
    Piece right{mid, worst.b, worst.mapping, worst.edge};
    kronrod15(integrand, left);
    kronrod15(integrand, right);
    total_error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
    ++subdivisions;
    // Running sums drift; refresh occasionally.
    if ((subdivisions & 1023u) == 0) {
      auto copy = active;
      total_error = 0.0;
      while (!copy.empty()) {
        total_error += copy.top().error;
        copy.pop();
      }
      for (const Piece& p : frozen) total_error += p.error;
    }
  }

  QuadratureResult out;
  out.subdivisions = subdivisions;
  std::vector<double> values;
  values.reserve(active.size() + frozen.size());
  while (!active.empty()) {
    values.push_back(active.top().value);
    out.abs_error += active.top().error;
    active.pop();
  }
  for (const Piece& p : frozen) {
    values.push_back(p.value);
    out.abs_error += p.error;
  }
  std::sort(values.begin(), values.end(),
            [](double x, double y) { return std::abs(x) < std::abs(y); });
  for (double v : values) out.value += v;

  if (out.abs_error > spec.abs_tol) {
    std::ostringstream os;
    os << "quadrature: error estimate " << out.abs_error << " exceeds abs_tol " << spec.abs_tol
       << " after " << subdivisions << " subdivisions";
    throw NumericalFailure(os.str());
  }
  return out;
}

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureSpec& spec) {
  const std::array<double, 2> bp{lo, hi};
  return integrate(f, bp, spec);
}

}  // namespace rho
