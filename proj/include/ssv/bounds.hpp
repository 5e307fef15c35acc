#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ssv/core.hpp"

namespace ssv {

/// The universal constants of the anti-concentration toolbox. They are
/// existence-only quantities, so every evaluator takes them as configuration;
/// defaults are 1.0 except where a closed form exists.
struct ConstantsConfig {
  double c_rv = 1.0;        // projection small-ball constant
  double c_rogozin = 1.0;   // Rogozin sum constant
  double c_net = 16.309690971296290551;  // net sparsification, 6e
  double c_normbound = 2.0;              // bounded mean-zero norm constant
  double c_detect = 0.082995956795328768;  // 1 - 2^(-1/8), see detect module

  void validate() const;

  /// Flat key=value file, '#' comments allowed; unknown keys are errors,
  /// missing keys keep their defaults.
  static ConstantsConfig load(const std::string& path);
  std::string to_string() const;
};

/// A probability bound: the raw formula value plus its clamp to [0,1].
struct BoundValue {
  double value = 0.0;   // min(1, max(0, raw))
  double radius = 0.0;  // small-ball radius the bound applies at
  double raw = 0.0;

  static BoundValue from_raw(double raw, double radius);
};

/// Rogozin's inequality for a sum of independent variables:
/// raw = c_rogozin * h * (sum (1-q_j) h_j^2)^(-1/2), valid for h >= max h_j.
BoundValue rogozin_bound(double h,
                         const std::vector<std::pair<double, double>>& terms,
                         const ConstantsConfig& cfg);

/// Small-ball bound for a projection onto a d-dimensional subspace when each
/// coordinate has Q(X_i, h) <= eta: raw = (c_rv * eta)^d at radius h*sqrt(d).
BoundValue rv_projection_bound(double eta, int d, const ConstantsConfig& cfg);

/// Extension to weakly spread coordinates (Q(X_i, h) <= 1 - tau):
/// raw = (c_rv * c_rogozin / sqrt(ell * tau))^(d / ell) at radius h*sqrt(d)/ell.
BoundValue rv_extension_bound(double h, double tau, int d, int ell,
                              const ConstantsConfig& cfg);

/// The ell that makes the extension bound's base at most 1/2:
/// ceil(4 c_rv^2 c_rogozin^2 / tau).
int choose_ell(double tau, const ConstantsConfig& cfg);

/// Distance-estimate threshold h = ((1 - delta^(-1/4)) / c_rogozin)
///                                 * sqrt(r/8) * t * d.
double distance_threshold(double delta, double r, double t, double d,
                          const ConstantsConfig& cfg);

/// Peakiness threshold theta = ((1 - delta^(-1/4)) / c_rogozin) * sqrt(gamma/8);
/// equals distance_threshold(delta, gamma, 1, 1, cfg).
double peaky_threshold(double gamma, double delta, const ConstantsConfig& cfg);

}  // namespace ssv
