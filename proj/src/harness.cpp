#include "ssv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "ssv/matrix_io.hpp"

namespace ssv {
namespace {

int floor_sqrt(int N) {
  int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(N))));
  while ((r + 1) * (r + 1) <= N) ++r;
  while (r > 0 && r * r > N) --r;
  return r;
}

int floor_fourth_root(int N) {
  int r = static_cast<int>(std::floor(std::pow(static_cast<double>(N), 0.25)));
  auto p4 = [](long long v) { return v * v * v * v; };
  while (p4(r + 1) <= N) ++r;
  while (r > 0 && p4(r) > N) --r;
  return r;
}

double pow2(int e) { return std::ldexp(1.0, e); }

double nearest_rank(const std::vector<double>& sorted, double q) {
  const std::size_t T = sorted.size();
  std::size_t k = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(T)));
  if (k == 0) k = 1;
  if (k > T) k = T;
  return sorted[k - 1];
}

double loo_min_distance(const Matrix& D) {
  const Index n = D.cols();
  double best = std::numeric_limits<double>::infinity();
  Matrix others(D.rows(), n - 1);
  for (Index j = 0; j < n; ++j) {
    Index c = 0;
    for (Index k = 0; k < n; ++k)
      if (k != j) others.col(c++) = D.col(k);
    best = std::min(best, distance_to_subspace(D.col(j), others));
  }
  return best;
}

/// Smallest epsilon whose grid stays inside the per-support cell budget;
/// certificates remain sound at any covering radius, only weaker.
double feasible_epsilon(double nominal, int dim, double halfwidth,
                        std::size_t budget) {
  const double per_axis =
      std::floor(std::pow(static_cast<double>(budget), 1.0 / dim));
  const double width = 2.0 * std::min(1.0, halfwidth);
  const double pitch_min = width / std::max(1.0, per_axis);
  const double floor_eps = pitch_min * std::sqrt(static_cast<double>(dim));
  return std::min(1.0, std::max(nominal, floor_eps));
}

SupportPolicy choose_policy(int n, int m, const PipelineOptions& options,
                            std::uint64_t seed) {
  if (options.support_kind == SupportPolicy::Kind::sample ||
      binomial_coefficient(n, m) > 1e5)
    return SupportPolicy::sample_supports(options.support_samples, seed);
  return SupportPolicy::enumerate_all_supports();
}

}  // namespace

ShiftSource ShiftSource::parse(const std::string& spec) {
  if (spec == "zero") return zero();
  if (spec.rfind("identity:", 0) == 0) {
    try {
      return scaled_ones(std::stod(spec.substr(9)));
    } catch (const std::exception&) {
      throw ConfigurationError("bad shift spec: " + spec);
    }
  }
  if (spec.rfind("file:", 0) == 0) return from_file(spec.substr(5));
  throw ConfigurationError("shift spec must be zero | identity:L | file:PATH");
}

Matrix ShiftSource::materialize(int N, int n) const {
  switch (kind) {
    case ShiftKind::zero:
      return Matrix::Zero(N, n);
    case ShiftKind::scaled_ones:
      return Matrix::Constant(N, n, lambda);
    case ShiftKind::file: {
      Matrix B = read_matrix_csv(path);
      if (B.rows() != N || B.cols() != n) {
        std::ostringstream os;
        os << "shift file " << path << " has shape " << B.rows() << "x"
           << B.cols() << ", expected " << N << "x" << n;
        throw ConfigurationError(os.str());
      }
      return B;
    }
  }
  throw ConfigurationError("unreachable shift kind");
}

void ExperimentConfig::validate() const {
  if (!(delta > 1)) throw ConfigurationError("delta must exceed 1");
  if (!(beta > 0 && beta < 1)) throw ConfigurationError("beta must be in (0,1)");
  if (trials < 1) throw ConfigurationError("trials must be positive");
  if (sizes.empty()) throw ConfigurationError("at least one (N,n) size required");
  for (const auto& [N, n] : sizes) {
    if (!(N >= n && n >= 1))
      throw ConfigurationError("sizes must satisfy N >= n >= 1");
    if (static_cast<double>(N) < delta * n)
      throw ConfigurationError("sizes must satisfy N >= delta * n");
    if (N > 512)
      throw ConfigurationError("N > 512 exceeds the full-decomposition guard");
  }
  for (std::size_t i = 0; i + 1 < u_grid.size(); ++i)
    if (!(u_grid[i] < u_grid[i + 1]))
      throw ConfigurationError("u_grid must be strictly increasing");
  for (double u : u_grid)
    if (!(u > 0)) throw ConfigurationError("u_grid entries must be positive");
}

std::pair<std::vector<TrialRecord>, ExperimentSummary> run_trials(
    const ExperimentConfig& config) {
  config.validate();
  std::vector<TrialRecord> records;
  records.reserve(static_cast<std::size_t>(config.trials) * config.sizes.size());
  ExperimentSummary summary;

  for (const auto& [N, n] : config.sizes) {
    const Matrix B = config.shift.materialize(N, n);
    std::vector<double> normalized;
    normalized.reserve(static_cast<std::size_t>(config.trials));
    for (int t = 0; t < config.trials; ++t) {
      TrialRecord rec;
      rec.trial_index = t;
      rec.seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(t));
      rec.N = N;
      rec.n = n;
      const Matrix A = sample_matrix(config.dist, N, n, rec.seed);
      rec.s_min = singular_extremes(A + B).second;
      rec.normalized = rec.s_min / std::sqrt(static_cast<double>(N));
      normalized.push_back(rec.normalized);
      records.push_back(rec);
    }
    std::sort(normalized.begin(), normalized.end());
    SizeSummary s;
    s.N = N;
    s.n = n;
    for (double u : config.u_grid) {
      TailEstimate te;
      te.u = u;
      te.count = static_cast<long>(
          std::upper_bound(normalized.begin(), normalized.end(), u) -
          normalized.begin());
      te.smoothed = (static_cast<double>(te.count) + 1.0) /
                    (static_cast<double>(config.trials) + 1.0);
      s.tail_estimates.push_back(te);
    }
    s.p01 = nearest_rank(normalized, 0.01);
    s.p05 = nearest_rank(normalized, 0.05);
    s.p50 = nearest_rank(normalized, 0.50);
    summary.per_size.push_back(std::move(s));
  }

  std::set<int> distinct;
  for (const auto& s : summary.per_size) distinct.insert(s.N);
  if (distinct.size() >= 3) {
    for (double u : config.u_grid) summary.decay_fit.push_back(fit_decay(summary, u));
  }
  return {std::move(records), std::move(summary)};
}

DecayFit fit_decay(const std::vector<std::pair<int, double>>& size_and_prob,
                   double u) {
  std::set<int> distinct;
  for (const auto& [N, p] : size_and_prob) {
    distinct.insert(N);
    if (!(p > 0 && p <= 1))
      throw ArgumentError("fit_decay needs probabilities in (0,1]");
  }
  if (distinct.size() < 3)
    throw ArgumentError("fit_decay needs at least 3 distinct N values");
  const double M = static_cast<double>(size_and_prob.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [N, p] : size_and_prob) {
    const double x = static_cast<double>(N);
    const double y = -std::log(p);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  DecayFit fit;
  fit.u = u;
  const double denom = M * sxx - sx * sx;
  fit.v_hat = (M * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.v_hat * sx) / M;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / M;
  for (const auto& [N, p] : size_and_prob) {
    const double y = -std::log(p);
    const double yhat = intercept + fit.v_hat * static_cast<double>(N);
    ss_res += (y - yhat) * (y - yhat);
    ss_tot += (y - ybar) * (y - ybar);
  }
  fit.r_squared = (ss_tot < 1e-30) ? (ss_res < 1e-30 ? 1.0 : 0.0)
                                   : 1.0 - ss_res / ss_tot;
  return fit;
}

DecayFit fit_decay(const ExperimentSummary& summary, double u) {
  std::vector<std::pair<int, double>> points;
  for (const auto& s : summary.per_size) {
    for (const auto& te : s.tail_estimates) {
      if (te.u == u) points.emplace_back(s.N, te.smoothed);
    }
  }
  if (points.empty())
    throw ArgumentError("fit_decay: threshold u is not on the summary grid");
  return fit_decay(points, u);
}

std::string results_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os.precision(17);
  os << "trial_index,seed,N,n,s_min,normalized\n";
  for (const auto& r : records)
    os << r.trial_index << ',' << r.seed << ',' << r.N << ',' << r.n << ','
       << r.s_min << ',' << r.normalized << '\n';
  return os.str();
}

ComponentSummary component_experiment(const ComponentConfig& config) {
  if (config.trials < 1) throw ArgumentError("trials must be positive");
  if (!(config.N >= config.n && config.n >= 1))
    throw ArgumentError("component experiment requires N >= n >= 1");
  if (config.thresholds.empty())
    throw ArgumentError("component experiment needs a threshold grid");

  ComponentSummary out;
  out.mode = config.mode;
  out.trials = config.trials;
  out.thresholds = config.thresholds;
  out.counts.assign(config.thresholds.size(), 0);

  double h = 0.0;
  Matrix B;
  std::vector<int> support;
  switch (config.mode) {
    case ComponentMode::peaky:
      out.reference_scale =
          std::sqrt(static_cast<double>(config.N - config.n + 1));
      break;
    case ComponentMode::distance: {
      if (config.H.size() < 2)
        throw PreconditionError("distance mode needs H with two pieces");
      const auto& parts = config.H.intervals();
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < parts.size(); ++i)
        gap = std::min(gap, parts[i + 1].first - parts[i].second);
      if (gap < config.d)
        throw PreconditionError("distance mode: interval gap below d");
      for (const auto& [lo, hi] : parts)
        if (config.dist.mass(lo, hi) < config.r)
          throw PreconditionError("distance mode: piece mass below r");
      h = distance_threshold(config.delta, config.r, config.t, config.d,
                             config.cfg);
      if (config.y.size() != config.n)
        throw ArgumentError("distance mode: y must have n coordinates");
      if (config.y.norm() < config.t)
        throw PreconditionError("distance mode: |y| < t");
      if (config.y.lpNorm<Eigen::Infinity>() > 2.0 * h / config.d)
        throw PreconditionError("distance mode: |y|_inf exceeds 2h/d");
      for (int j = 0; j < config.n; ++j)
        if (config.y[j] != 0.0) support.push_back(j);
      B = Matrix::Zero(config.N, config.n);
      out.reference_scale = h * std::sqrt(static_cast<double>(config.N));
      break;
    }
    case ComponentMode::norm: {
      // the folklore norm bound needs bounded, mean-zero entries
      auto bound = config.dist.support_bound();
      if (!bound)
        throw PreconditionError("norm mode requires a bounded entry law");
      if (*bound > config.R + 1e-12)
        throw PreconditionError("norm mode: entry bound exceeds R");
      auto mean = config.dist.mean();
      if (!mean || std::abs(*mean) > 1e-9)
        throw PreconditionError("norm mode requires mean-zero entries");
      out.reference_scale =
          config.R * std::sqrt(static_cast<double>(config.N));
      break;
    }
  }

  double sum_stat = 0.0;
  for (int t = 0; t < config.trials; ++t) {
    const std::uint64_t seed =
        derive_seed(config.master_seed, static_cast<std::uint64_t>(t));
    const Matrix A = sample_matrix(config.dist, config.N, config.n, seed);
    double stat = 0.0;
    switch (config.mode) {
      case ComponentMode::peaky:
        stat = loo_min_distance(A) / out.reference_scale;
        break;
      case ComponentMode::distance: {
        const Matrix regular = truncate(A, config.H);
        const Matrix gens = build_subspace_basis(A, B, config.H, support);
        stat = distance_to_subspace(regular * config.y, gens) /
               out.reference_scale;
        break;
      }
      case ComponentMode::norm:
        stat = operator_norm(A) / out.reference_scale;
        break;
    }
    sum_stat += stat;
    out.max_statistic = std::max(out.max_statistic, stat);
    for (std::size_t k = 0; k < config.thresholds.size(); ++k) {
      const bool hit = (config.mode == ComponentMode::norm)
                           ? stat >= config.thresholds[k]
                           : stat <= config.thresholds[k];
      if (hit) ++out.counts[k];
    }
  }
  out.mean_statistic = sum_stat / config.trials;
  out.smoothed.reserve(out.counts.size());
  for (long c : out.counts)
    out.smoothed.push_back((static_cast<double>(c) + 1.0) /
                           (static_cast<double>(config.trials) + 1.0));
  return out;
}

double solve_tau0(double gamma, double delta, const ConstantsConfig& cfg) {
  cfg.validate();
  if (!(gamma > 0 && gamma < 1)) throw ArgumentError("gamma must be in (0,1)");
  if (!(delta > 1)) throw ArgumentError("delta must exceed 1");
  const double f0 = (1.0 - std::pow(delta, -0.25)) *
                    std::sqrt(cfg.c_detect * gamma) / cfg.c_rogozin;
  const double K = 16.0 * std::sqrt(8.0) * cfg.c_net * cfg.c_normbound / f0;
  const double budget = 0.25;
  // sup over s >= 0 of tau * 2^(-s/4) * (ln K - 1.5 ln tau + (ln2/2) s);
  // the maximizer solves a + b s = 2.
  const auto sup_log = [&](double tau) {
    const double a = std::log(K) - 1.5 * std::log(tau);
    const double b = 0.5 * std::log(2.0);
    const double s = (a >= 2.0) ? 0.0 : (2.0 - a) / b;
    return tau * std::pow(2.0, -0.25 * s) * (a + b * s);
  };
  if (sup_log(1.0) <= budget) return 1.0;
  double good = 1.0, bad = 1.0;
  while (good > 1e-12 && sup_log(good) > budget) {
    bad = good;
    good *= 0.5;
  }
  while (bad - good > 1e-6) {
    const double mid = 0.5 * (good + bad);
    (sup_log(mid) <= budget ? good : bad) = mid;
  }
  return good;
}

PipelineReport pipeline_certify(const Matrix& A, const Matrix& B, double delta,
                                double beta, const ConstantsConfig& cfg,
                                std::uint64_t seed,
                                const PipelineOptions& options) {
  cfg.validate();
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw ArgumentError("pipeline_certify: A and B must have the same shape");
  const int N = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (!(beta > 0 && beta < 1)) throw ArgumentError("beta must be in (0,1)");
  if (static_cast<double>(N) < delta * n)
    throw PreconditionError("pipeline_certify requires N >= delta * n");
  if (N > 512)
    throw ResourceError("N > 512 exceeds the full-decomposition guard");

  PipelineReport rep;
  rep.N = N;
  rep.n = n;
  const Matrix D = A + B;
  const auto extremes = singular_extremes(D);
  rep.s_max = extremes.first;
  rep.s_min = extremes.second;

  // the realization's empirical entry law drives every law-dependent stage
  std::vector<double> entries(A.data(), A.data() + A.size());
  const EntryDistribution law = EntryDistribution::empirical(std::move(entries));
  const double root = std::sqrt(static_cast<double>(N));

  rep.q_measured = law.concentration(1.0);
  rep.anticoncentration_ok = rep.q_measured <= 1.0 - beta;
  rep.z = quantile_shift(law, beta);
  rep.gamma = 0.25 * beta;
  rep.left_mass = law.mass(rep.z - root, rep.z - 1.0);
  rep.right_mass = law.mass(rep.z + 1.0, rep.z + root);
  if (std::min(rep.left_mass, rep.right_mass) >= rep.gamma)
    rep.case_id = CaseId::two_sided;
  else if (rep.right_mass < rep.gamma)
    rep.case_id = CaseId::right_deficient;
  else
    rep.case_id = CaseId::left_deficient;
  const bool two_sided = rep.case_id == CaseId::two_sided;

  // peaky route: deterministic leave-one-out certificate
  rep.min_loo_distance = loo_min_distance(D);
  rep.whole_sphere_bound = rep.min_loo_distance / root;
  rep.theta_peaky = peaky_threshold(rep.gamma, delta, cfg);
  rep.peaky_bound = rep.theta_peaky * rep.min_loo_distance;

  rep.compressible.name = "compressible";
  rep.incompressible.name = "incompressible";

  if (!two_sided) {
    const std::string why =
        "case is " + to_string(rep.case_id) + "; window mass below gamma";
    rep.compressible.status = "skipped";
    rep.compressible.detail = why;
    rep.incompressible.status = "skipped";
    rep.incompressible.detail = why;
    rep.combined_bound = rep.whole_sphere_bound;
    return rep;
  }

  // --- compressible regime: H = z + ([-sqrt(N),-1] u [1,sqrt(N)]) ---
  {
    RegimeReport& rr = rep.compressible;
    const int m = std::min(floor_sqrt(N), n);
    const IntervalUnion Hc({{-root, -1.0}, {1.0, root}});
    const MatrixSplit split = split_matrix(A, B, rep.z, Hc);
    rr.epsilon_nominal = 1.0 / (static_cast<double>(N) * N);
    const NormBoxSet T{0.5, 1.0, rep.theta_peaky, 1e-9};
    rr.target_known_empty =
        rep.theta_peaky <= 1.0 / std::sqrt(static_cast<double>(n));
    if (T.empty_in_dimension(m)) {
      rr.status = "empty_target";
      rr.detail =
          "theta * sqrt(m) < 1/2: no almost-sparse non-peaky vector exists";
      rr.target_known_empty = true;
    } else {
      try {
        rr.epsilon_used =
            feasible_epsilon(rr.epsilon_nominal, m,
                             std::min(1.0, rep.theta_peaky),
                             options.max_cells_per_support);
        const auto policy = choose_policy(n, m, options, seed);
        rr.supports_complete =
            policy.kind == SupportPolicy::Kind::enumerate_all;
        const Net net = sparsified_net(n, m, rr.epsilon_used, T, policy);
        rr.net_size = net.size();
        rr.certificate = certify_general(
            split, net, {}, rr.epsilon_used, false,
            "almost sqrt(N)-sparse, non-peaky unit vectors");
      } catch (const std::exception& e) {
        rr.status = "error";
        rr.detail = e.what();
      }
    }
  }

  // --- incompressible regime: detected dyadic H ---
  {
    RegimeReport& rr = rep.incompressible;
    try {
      const DetectionResult det =
          find_dyadic_intervals(law, rep.z, rep.gamma, N, cfg);
      rep.detection = det;
      const double R = pow2(det.ell + 2);
      const double d = pow2(det.ell);
      const double r =
          cfg.c_detect * rep.gamma * std::pow(2.0, -det.ell / 8.0);
      rep.tau0 = options.tau0_override > 0.0 ? options.tau0_override
                                             : solve_tau0(rep.gamma, delta, cfg);
      int m = static_cast<int>(
          std::ceil(rep.tau0 * n / std::pow(2.0, 0.25 * det.ell)));
      m = std::max(1, std::min(m, n));
      rep.m_incompressible = m;
      rep.t_incompressible = 0.5 * std::sqrt(static_cast<double>(m) / n);
      rep.h_distance =
          distance_threshold(delta, r, rep.t_incompressible, d, cfg);
      const double cap = 2.0 * rep.h_distance / d;
      rep.spread_witness_fits =
          1.0 / static_cast<double>(floor_fourth_root(N)) <= cap;

      const MatrixSplit split = split_matrix(A, B, det.lambda, det.H());
      rep.norm_budget = cfg.c_normbound * R * root;
      const double regular_norm = operator_norm(split.regular);
      rep.norm_within_budget = regular_norm <= rep.norm_budget;
      rr.epsilon_nominal = rep.h_distance / (2.0 * cfg.c_normbound * R * root);

      rr.target_known_empty = floor_sqrt(N) >= n;  // S' empty at this scale
      const NormBoxSet T{rep.t_incompressible, 1.0, cap, 1e-9};
      if (T.empty_in_dimension(m)) {
        rr.status = "infeasible";
        std::ostringstream os;
        os << "representative set empty: 2h/d = " << cap << " gives max norm "
           << cap * std::sqrt(static_cast<double>(m)) << " < t = "
           << rep.t_incompressible << " with these constants";
        rr.detail = os.str();
      } else {
        rr.epsilon_used = feasible_epsilon(rr.epsilon_nominal, m,
                                           std::min(1.0, cap),
                                           options.max_cells_per_support);
        const auto policy = choose_policy(n, m, options, seed);
        rr.supports_complete =
            policy.kind == SupportPolicy::Kind::enumerate_all;
        const Net net = sparsified_net(n, m, rr.epsilon_used, T, policy);
        rr.net_size = net.size();
        rr.certificate =
            certify_general(split, net, {}, rr.epsilon_used, false,
                            "non almost sqrt(N)-sparse unit vectors");
      }
    } catch (const PreconditionError& e) {
      rr.status = "precondition_failed";
      rr.detail = e.what();
    } catch (const DetectionError& e) {
      rr.status = "precondition_failed";
      rr.detail = e.what();
    } catch (const std::exception& e) {
      rr.status = "error";
      rr.detail = e.what();
    }
  }

  // combined three-regime bound, valid when every regime either certifies
  // its piece of the sphere or that piece is known to be empty
  {
    bool valid = true;
    double bound = rep.peaky_bound;
    const auto fold = [&](const RegimeReport& rr, bool covering_ok) {
      if (rr.target_known_empty) return;  // vacuous piece
      if (rr.certificate && covering_ok && rr.supports_complete)
        bound = std::min(bound, rr.certificate->lower_bound);
      else
        valid = false;
    };
    fold(rep.compressible, true);
    fold(rep.incompressible, rep.spread_witness_fits);
    if (valid) rep.combined_bound = bound;
  }
  return rep;
}

}  // namespace ssv
