#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssv/core.hpp"
#include "ssv/interval.hpp"

namespace ssv {

enum class Family {
  gaussian,
  cauchy,
  pareto,
  rademacher,
  uniform,
  twopoint,
  constant,
  empirical,
};

/// An i.i.d. entry law: a named family plus a positive scale that multiplies
/// every draw. Sampling is a pure function of (family, scale, seed); entry
/// (i,j) of a matrix consumes one counter-keyed uniform, so streams are
/// order-independent.
///
/// Families with an analytic cdf also expose closed-interval masses,
/// quantiles (generalized inverse cdf) and partial means; the empirical
/// family answers the same queries on its sample measure.
class EntryDistribution {
 public:
  static EntryDistribution gaussian(double scale = 1.0);
  static EntryDistribution cauchy(double scale = 1.0);
  static EntryDistribution pareto(double shape, double scale = 1.0);
  static EntryDistribution rademacher(double scale = 1.0);
  static EntryDistribution uniform(double a, double b, double scale = 1.0);
  static EntryDistribution twopoint(double p, double x1, double x2,
                                    double scale = 1.0);
  static EntryDistribution constant(double c, double scale = 1.0);
  static EntryDistribution empirical(std::vector<double> samples,
                                     double scale = 1.0);

  /// Parse a CLI spec string: gaussian | cauchy | pareto:a | rademacher |
  /// uniform:a,b | twopoint:p,x1,x2 | constant:c | empirical:PATH.
  static EntryDistribution parse(const std::string& spec);

  Family family() const { return family_; }
  double scale() const { return scale_; }
  const std::string& name() const { return name_; }
  bool discrete() const;
  bool analytic() const { return family_ != Family::empirical; }

  /// One draw from a single uniform in (0,1) via the quantile transform.
  double sample_from_uniform(double u) const;
  double sample(std::uint64_t seed, std::uint64_t i, std::uint64_t j) const {
    return sample_from_uniform(counter_uniform(seed, i, j));
  }

  double cdf(double x) const;        // P{X <= x}
  double cdf_left(double x) const;   // P{X < x}
  double quantile(double q) const;   // inf{x : cdf(x) >= q}, q in (0,1]
  double mass(double lo, double hi) const;  // P{lo <= X <= hi}, closed
  /// E[X ; lo <= X <= hi]. Continuous families integrate the density with
  /// an adaptive rule to ~1e-11 relative tolerance; discrete and empirical
  /// families sum atoms exactly.
  double partial_mean(double lo, double hi) const;

  /// Analytic Levy concentration Q(X, alpha) = sup_l P{|X - l| <= alpha}.
  /// For the empirical family this is the exact sup on the sample measure.
  double concentration(double alpha) const;

  /// sup |X| when the law is bounded, nullopt otherwise.
  std::optional<double> support_bound() const;
  /// E[X] when it exists (pareto needs shape > 1; cauchy has none).
  std::optional<double> mean() const;

  const std::vector<double>& samples() const { return *samples_; }

 private:
  EntryDistribution() = default;

  Family family_ = Family::gaussian;
  double scale_ = 1.0;
  double p1_ = 0.0, p2_ = 0.0, p3_ = 0.0;  // family parameters
  std::shared_ptr<const std::vector<double>> samples_;  // empirical, sorted
  std::string name_;

  double base_cdf(double x) const;
  double base_cdf_left(double x) const;
  double base_quantile(double q) const;
  double base_density(double x) const;
  double base_partial_mean(double lo, double hi) const;
};

/// Result of an empirical concentration-function query.
struct ConcentrationQuery {
  double alpha = 0.0;
  double estimate = 0.0;      // in [0,1]
  std::size_t sample_count = 0;
  double ci_halfwidth = 0.0;  // 95% normal-approximation half width
};

/// Exact empirical sup_l P{|X - l| <= alpha} on a sorted sample list: the
/// sup is attained by a window of width 2*alpha whose left edge is a sample
/// point, so a sliding window over the sorted data is exact.
ConcentrationQuery concentration_estimate(const std::vector<double>& sorted_samples,
                                          double alpha);

enum class CaseId { right_deficient, left_deficient, two_sided };

std::string to_string(CaseId id);

struct CaseSelection {
  double z = 0.0;            // centering point; z-1 is a (beta/2)-quantile
  CaseId case_id = CaseId::two_sided;
  double gamma = 0.0;        // = beta/4
  double left_mass = 0.0;
  double right_mass = 0.0;
  double q_measured = 0.0;   // Q(X, 1) used for the precondition check
};

/// The three-case split used before interval detection: z - 1 is chosen as a
/// (beta/2)-quantile of the law, masses of the windows [z-sqrt(N), z-1] and
/// [z+1, z+sqrt(N)] decide the case at level gamma = beta/4.
/// Requires Q(X, 1) <= 1 - beta; fails with the measured Q otherwise.
CaseSelection select_shift_and_case(const EntryDistribution& dist, double beta,
                                    int N);

/// The shift construction alone (no anti-concentration gate): returns z such
/// that P{X <= z-1} >= beta/2 and P{X < z-1} <= beta/2.
double quantile_shift(const EntryDistribution& dist, double beta);

/// i.i.d. N x n sample, deterministic in (dist, N, n, seed).
Matrix sample_matrix(const EntryDistribution& dist, int N, int n,
                     std::uint64_t seed);

}  // namespace ssv
