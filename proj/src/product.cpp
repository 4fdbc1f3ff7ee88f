#include "rho/product.hpp"

#include <cmath>
#include <sstream>

#include "rho/errors.hpp"

namespace rho {

PredictorTerm PredictorTerm::parse(const std::string& text) {
  PredictorTerm t;
  if (text == "1") return t;
  if (text.empty() || text[0] != 'w') {
    throw ContractViolation("predictor term '" + text + "': expected 1, w, w^k, w[j] or w[j]^k");
  }
  t.type = Type::power;
  std::size_t pos = 1;
  try {
    if (pos < text.size() && text[pos] == '[') {
      const std::size_t close = text.find(']', pos);
      if (close == std::string::npos) throw std::invalid_argument("bracket");
      t.component = std::stoul(text.substr(pos + 1, close - pos - 1));
      pos = close + 1;
    }
    if (pos < text.size()) {
      if (text[pos] != '^') throw std::invalid_argument("caret");
      std::size_t used = 0;
      t.power = std::stoi(text.substr(pos + 1), &used);
      if (used != text.size() - pos - 1 || t.power < 1) throw std::invalid_argument("power");
    }
  } catch (const std::exception&) {
    throw ContractViolation("predictor term '" + text + "' is malformed");
  }
  return t;
}

std::string PredictorTerm::to_string() const {
  if (type == Type::constant) return "1";
  std::string s = component == 0 ? "w" : "w[" + std::to_string(component) + "]";
  if (power != 1) s += "^" + std::to_string(power);
  return s;
}

double PredictorTerm::operator()(std::span<const double> w) const {
  if (type == Type::constant) return 1.0;
  if (component >= w.size()) {
    throw ContractViolation("predictor term " + to_string() + " exceeds design dimension");
  }
  const double v = w[component];
  return power == 1 ? v : std::pow(v, power);
}

LinearPredictor LinearPredictor::constant(double c) {
  return LinearPredictor{{PredictorTerm{}}, {c}};
}

double LinearPredictor::operator()(std::span<const double> w) const {
  double s = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) s += coef[j] * basis[j](w);
  return s;
}

std::string LinearPredictor::describe() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (j) os << " + ";
    os << coef[j] << "*" << basis[j].to_string();
  }
  return os.str();
}

ProductDensity ProductDensity::iid(Coordinate c, std::size_t n) {
  if (n == 0) throw ContractViolation("ProductDensity: n must be >= 1");
  ProductDensity p;
  p.coords_.push_back(std::move(c));
  p.n_ = n;
  return p;
}

ProductDensity ProductDensity::of(std::vector<Coordinate> coords) {
  if (coords.empty()) throw ContractViolation("ProductDensity: need at least one coordinate");
  ProductDensity p;
  p.n_ = coords.size();
  p.coords_ = std::move(coords);
  return p;
}

bool ProductDensity::all_scalar_with_base(BaseMeasure base) const {
  for (const Coordinate& c : coords_) {
    const auto* d = std::get_if<Density1D>(&c);
    if (d == nullptr || d->base() != base) return false;
  }
  return true;
}

bool ProductDensity::all_scalar() const {
  for (const Coordinate& c : coords_) {
    if (!std::holds_alternative<Density1D>(c)) return false;
  }
  return true;
}

double ProductDensity::log_density_at(const Sample& X, std::size_t i, bool lebesgue) const {
  const Coordinate& c = coordinate(i);
  if (const auto* d = std::get_if<Density1D>(&c)) {
    if (X.kind() != Sample::Kind::scalar) {
      throw ContractViolation("scalar coordinate density evaluated on a regression sample");
    }
    return lebesgue ? d->log_lebesgue_density(X.x(i)) : d->log_density(X.x(i));
  }
  const auto& pd = std::get<PairDensity>(c);
  if (X.kind() != Sample::Kind::pair) {
    throw ContractViolation("regression coordinate density evaluated on a scalar sample");
  }
  return pd.log_density(X.w(i), X.y(i));
}

std::string ProductDensity::describe() const {
  std::ostringstream os;
  auto one = [&](const Coordinate& c) {
    if (const auto* d = std::get_if<Density1D>(&c)) {
      os << d->describe();
    } else {
      const auto& pd = std::get<PairDensity>(c);
      os << "r=" << pd.error.describe() << ";g=" << pd.g.describe();
    }
  };
  if (is_iid()) {
    os << "iid[" << n_ << "] ";
    one(coords_.front());
  } else {
    os << "product[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) os << ", ";
      one(coords_[i]);
    }
    os << "]";
  }
  return os.str();
}

}  // namespace rho
