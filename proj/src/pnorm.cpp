#include "bjortho/pnorm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace bjortho {

PNorm PNorm::parse(const std::string& text) {
  std::string s = text;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "inf" || s == "infinity" || s == "oo") return PNorm::inf();
  try {
    size_t used = 0;
    double p = std::stod(s, &used);
    require(used == s.size(), "PNorm: cannot parse '" + text + "'");
    return PNorm(p);
  } catch (const std::invalid_argument&) {
    throw InvalidInput("PNorm: cannot parse '" + text + "'");
  } catch (const std::out_of_range&) {
    throw InvalidInput("PNorm: value out of range in '" + text + "'");
  }
}

std::string PNorm::str() const {
  if (is_inf()) return "inf";
  if (p_ == std::floor(p_) && std::abs(p_) < 1e15) {
    return std::to_string(static_cast<long long>(p_));
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p_);
  return buf;
}

double p_norm(const Vector& x, const PNorm& p) {
  require_finite(x, "p_norm");
  if (x.size() == 0) return 0.0;
  if (p.is_one()) return x.cwiseAbs().sum();
  if (p.is_inf()) return x.cwiseAbs().maxCoeff();
  if (p.is_two()) return x.norm();
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    acc += std::pow(std::abs(x[i]) / m, p.value());
  }
  return m * std::pow(acc, 1.0 / p.value());
}

}  // namespace bjortho
