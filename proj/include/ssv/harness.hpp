#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssv/bounds.hpp"
#include "ssv/certify.hpp"
#include "ssv/detect.hpp"
#include "ssv/dist.hpp"

namespace ssv {

// ---------------------------------------------------------------------------
// seeded Monte Carlo trials
// ---------------------------------------------------------------------------

enum class ShiftKind { zero, scaled_ones, file };

/// The non-random summand B. `scaled_ones` adds lambda to every entry
/// (lambda times the all-ones matrix); CLI spelling: zero | identity:L |
/// file:PATH.
struct ShiftSource {
  ShiftKind kind = ShiftKind::zero;
  double lambda = 0.0;
  std::string path;

  static ShiftSource zero() { return {}; }
  static ShiftSource scaled_ones(double lambda) {
    return {ShiftKind::scaled_ones, lambda, {}};
  }
  static ShiftSource from_file(std::string path) {
    return {ShiftKind::file, 0.0, std::move(path)};
  }
  static ShiftSource parse(const std::string& spec);

  Matrix materialize(int N, int n) const;
};

struct ExperimentConfig {
  EntryDistribution dist = EntryDistribution::gaussian();
  double delta = 2.0;
  std::vector<std::pair<int, int>> sizes;  // (N, n)
  int trials = 0;
  std::uint64_t master_seed = 0;
  ShiftSource shift;
  std::vector<double> u_grid;
  double beta = 0.5;

  void validate() const;
};

struct TrialRecord {
  int trial_index = 0;
  std::uint64_t seed = 0;
  int N = 0;
  int n = 0;
  double s_min = 0.0;
  double normalized = 0.0;  // s_min / sqrt(N)
};

struct TailEstimate {
  double u = 0.0;
  long count = 0;        // #{normalized <= u}
  double smoothed = 0.0; // (count + 1) / (trials + 1)
};

struct SizeSummary {
  int N = 0;
  int n = 0;
  std::vector<TailEstimate> tail_estimates;
  double p01 = 0.0, p05 = 0.0, p50 = 0.0;
};

struct DecayFit {
  double u = 0.0;
  double v_hat = 0.0;
  double r_squared = 0.0;
};

struct ExperimentSummary {
  std::vector<SizeSummary> per_size;
  std::vector<DecayFit> decay_fit;  // one per u when >= 3 distinct N
};

std::pair<std::vector<TrialRecord>, ExperimentSummary> run_trials(
    const ExperimentConfig& config);

/// Least-squares slope of -log(smoothed tail probability) against N at a
/// fixed threshold u. Needs at least 3 distinct N.
DecayFit fit_decay(const std::vector<std::pair<int, double>>& size_and_prob,
                   double u);
DecayFit fit_decay(const ExperimentSummary& summary, double u);

std::string results_csv(const std::vector<TrialRecord>& records);

// ---------------------------------------------------------------------------
// component experiments
// ---------------------------------------------------------------------------

enum class ComponentMode { peaky, distance, norm };

struct ComponentConfig {
  ComponentMode mode = ComponentMode::peaky;
  EntryDistribution dist = EntryDistribution::rademacher();
  int N = 0, n = 0;
  int trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> thresholds;  // grid of u values (statistic units)

  // distance mode: H with two pieces at gap >= d and per-piece mass >= r;
  // y must satisfy |y| >= t and |y|_inf <= 2 h / d for the derived h
  IntervalUnion H;
  Vector y;
  double delta = 4.0;
  double r = 0.0, d = 0.0, t = 0.0;
  ConstantsConfig cfg;

  // norm mode: entries must be mean zero with |entry| <= R
  double R = 1.0;
};

/// peaky:   statistic = min_j dist(col_j, span of others) / sqrt(N-n+1),
///          counts are #{statistic <= u}
/// distance: statistic = dist(<A>_H y, subspace) / (h sqrt(N)),
///          counts are #{statistic <= u}
/// norm:    statistic = |W| / (R sqrt(N)), counts are #{statistic >= u}
struct ComponentSummary {
  ComponentMode mode = ComponentMode::peaky;
  int trials = 0;
  double reference_scale = 0.0;  // the denominator used for the statistic
  std::vector<double> thresholds;
  std::vector<long> counts;
  std::vector<double> smoothed;  // (count+1)/(trials+1)
  double max_statistic = 0.0;
  double mean_statistic = 0.0;
};

ComponentSummary component_experiment(const ComponentConfig& config);

// ---------------------------------------------------------------------------
// end-to-end pipeline on one realization
// ---------------------------------------------------------------------------

/// Largest tau in (0,1] such that
/// sup_{s>=0} (16 sqrt(8) c_net c_normbound 2^(s/2) / (f0 tau^(3/2)))^(2^(-s/4) tau)
/// <= exp(1/4), with f0 = (1-delta^(-1/4)) sqrt(c_detect gamma) / c_rogozin.
/// Solved by bisection to 1e-6.
double solve_tau0(double gamma, double delta, const ConstantsConfig& cfg);

struct RegimeReport {
  std::string name;
  std::string status = "ok";           // ok | skipped | empty_target | infeasible | error
  std::string detail;
  std::optional<Certificate> certificate;
  double epsilon_nominal = 0.0;
  double epsilon_used = 0.0;
  std::size_t net_size = 0;
  bool target_known_empty = false;     // certificate (if any) is vacuous over an empty class
  bool supports_complete = true;       // false when supports were sampled, so
                                       // the net may not cover the whole class
};

struct PipelineOptions {
  double tau0_override = 0.0;          // 0 = solve the defining inequality
  std::size_t max_cells_per_support = 200000;
  SupportPolicy::Kind support_kind = SupportPolicy::Kind::enumerate_all;
  int support_samples = 2000;
};

struct PipelineReport {
  int N = 0, n = 0;
  double s_min = 0.0, s_max = 0.0;

  // shift-and-case stage on the realization's empirical entry law
  double q_measured = 0.0;
  bool anticoncentration_ok = false;
  double z = 0.0;
  double gamma = 0.0;
  CaseId case_id = CaseId::two_sided;
  double left_mass = 0.0, right_mass = 0.0;

  // peaky route (always computed; deterministic)
  double min_loo_distance = 0.0;       // min_j dist(col_j(D), span of others)
  double whole_sphere_bound = 0.0;     // (1/sqrt(N)) * min_loo, valid for s_min
  double theta_peaky = 0.0;            // threshold of the three-way split
  double peaky_bound = 0.0;            // theta_peaky * min_loo (two_sided case)

  RegimeReport compressible;
  RegimeReport incompressible;

  // incompressible parameter derivation
  std::optional<DetectionResult> detection;
  double tau0 = 0.0;
  int m_incompressible = 0;
  double t_incompressible = 0.0;
  double h_distance = 0.0;
  double norm_budget = 0.0;            // c_normbound * R * sqrt(N)
  bool norm_within_budget = false;
  bool spread_witness_fits = false;    // 1/floor(N^(1/4)) <= 2 h / d

  /// min over the three regime bounds when they jointly cover the sphere;
  /// in deficient cases the whole-sphere bound.
  std::optional<double> combined_bound;
};

PipelineReport pipeline_certify(const Matrix& A, const Matrix& B, double delta,
                                double beta, const ConstantsConfig& cfg,
                                std::uint64_t seed,
                                const PipelineOptions& options = {});

}  // namespace ssv
