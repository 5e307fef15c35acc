#include "ssv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ssv {

void ConstantsConfig::validate() const {
  if (!(c_rv > 0 && c_rogozin > 0 && c_net > 0 && c_normbound > 0 && c_detect > 0))
    throw ConfigurationError("all constants must be strictly positive");
  if (!(c_detect <= 1.0)) throw ConfigurationError("c_detect must be <= 1");
}

ConstantsConfig ConstantsConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open constants file: " + path);
  ConstantsConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!line.empty() && is_space(line.front())) line.erase(line.begin());
    while (!line.empty() && is_space(line.back())) line.pop_back();
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigurationError("constants file line " + std::to_string(lineno) +
                               " is not key=value");
    std::string key = line.substr(0, eq);
    while (!key.empty() && is_space(key.back())) key.pop_back();
    double value = 0;
    try {
      value = std::stod(line.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigurationError("bad value on constants file line " +
                               std::to_string(lineno));
    }
    if (key == "c_rv") cfg.c_rv = value;
    else if (key == "c_rogozin") cfg.c_rogozin = value;
    else if (key == "c_net") cfg.c_net = value;
    else if (key == "c_normbound") cfg.c_normbound = value;
    else if (key == "c_detect") cfg.c_detect = value;
    else throw ConfigurationError("unknown constant '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

std::string ConstantsConfig::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "c_rv=" << c_rv << "\nc_rogozin=" << c_rogozin << "\nc_net=" << c_net
     << "\nc_normbound=" << c_normbound << "\nc_detect=" << c_detect << "\n";
  return os.str();
}

BoundValue BoundValue::from_raw(double raw, double radius) {
  BoundValue b;
  b.raw = raw;
  b.radius = radius;
  b.value = std::min(1.0, std::max(0.0, raw));
  return b;
}

BoundValue rogozin_bound(double h,
                         const std::vector<std::pair<double, double>>& terms,
                         const ConstantsConfig& cfg) {
  cfg.validate();
  if (terms.empty()) throw ArgumentError("rogozin_bound needs at least one term");
  if (!(h > 0)) throw ArgumentError("rogozin_bound requires h > 0");
  double denom = 0.0;
  double max_hj = 0.0;
  for (const auto& [hj, qj] : terms) {
    if (!(hj > 0)) throw ArgumentError("term radii must be positive");
    if (!(qj >= 0 && qj <= 1)) throw ArgumentError("term q must be in [0,1]");
    max_hj = std::max(max_hj, hj);
    denom += (1.0 - qj) * hj * hj;
  }
  if (h < max_hj) {
    std::ostringstream os;
    os << "rogozin_bound requires h >= max h_j (h = " << h
       << ", max h_j = " << max_hj << ")";
    throw PreconditionError(os.str());
  }
  if (denom == 0.0)
    throw DegenerateError("rogozin_bound: all q_j = 1, denominator vanishes");
  return BoundValue::from_raw(cfg.c_rogozin * h / std::sqrt(denom), h);
}

BoundValue rv_projection_bound(double eta, int d, const ConstantsConfig& cfg) {
  cfg.validate();
  if (!(eta > 0 && eta < 1)) throw ArgumentError("eta must be in (0,1)");
  if (d < 1) throw ArgumentError("d must be >= 1");
  return BoundValue::from_raw(std::pow(cfg.c_rv * eta, d),
                              std::sqrt(static_cast<double>(d)));
}

BoundValue rv_extension_bound(double h, double tau, int d, int ell,
                              const ConstantsConfig& cfg) {
  cfg.validate();
  if (!(h > 0)) throw ArgumentError("h must be positive");
  if (!(tau > 0 && tau <= 1)) throw ArgumentError("tau must be in (0,1]");
  if (d < 1 || ell < 1) throw ArgumentError("d and ell must be >= 1");
  const double base =
      cfg.c_rv * cfg.c_rogozin / std::sqrt(static_cast<double>(ell) * tau);
  const double raw = std::pow(base, static_cast<double>(d) / ell);
  return BoundValue::from_raw(raw, h * std::sqrt(static_cast<double>(d)) / ell);
}

int choose_ell(double tau, const ConstantsConfig& cfg) {
  cfg.validate();
  if (!(tau > 0 && tau <= 1)) throw ArgumentError("tau must be in (0,1]");
  const double c = cfg.c_rv * cfg.c_rogozin;
  return static_cast<int>(std::ceil(4.0 * c * c / tau));
}

double distance_threshold(double delta, double r, double t, double d,
                          const ConstantsConfig& cfg) {
  cfg.validate();
  if (!(delta > 1)) throw ArgumentError("delta must exceed 1");
  if (!(r > 0 && r < 1)) throw ArgumentError("r must be in (0,1)");
  if (!(t > 0) || !(d > 0)) throw ArgumentError("t and d must be positive");
  return (1.0 - std::pow(delta, -0.25)) / cfg.c_rogozin * std::sqrt(r / 8.0) * t * d;
}

double peaky_threshold(double gamma, double delta, const ConstantsConfig& cfg) {
  return distance_threshold(delta, gamma, 1.0, 1.0, cfg);
}

}  // namespace ssv
