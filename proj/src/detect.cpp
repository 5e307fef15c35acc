#include "ssv/detect.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "ssv/hpart.hpp"

namespace ssv {
namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

// mean-zero tolerance: tight for analytic laws, 3 standard errors on the
// sample measure for empirical ones
double mean_zero_tolerance(const EntryDistribution& dist,
                           const DetectionResult& r) {
  if (dist.analytic()) return 1e-8;
  const auto& s = dist.samples();
  const IntervalUnion H = r.H();
  double sum = 0.0, sumsq = 0.0;
  for (double x : s) {
    const double v = truncate(dist.scale() * x - r.lambda, H);
    sum += v;
    sumsq += v * v;
  }
  const double M = static_cast<double>(s.size());
  const double var = std::max(0.0, sumsq / M - (sum / M) * (sum / M));
  return std::max(3.0 * std::sqrt(var / M), 1e-12);
}

}  // namespace

IntervalUnion DetectionResult::H() const {
  std::vector<std::pair<double, double>> parts;
  for (const auto& iv : H1.intervals()) parts.push_back(iv);
  for (const auto& iv : H2.intervals()) parts.push_back(iv);
  return IntervalUnion(parts);
}

DetectionResult find_dyadic_intervals(const EntryDistribution& dist, double z,
                                      double gamma, int N,
                                      const ConstantsConfig& cfg) {
  cfg.validate();
  if (!(gamma > 0 && gamma < 1)) throw ArgumentError("gamma must be in (0,1)");
  if (N < 1) throw ArgumentError("N must be positive");
  const double root = std::sqrt(static_cast<double>(N));
  const double left_mass = dist.mass(z - root, z - 1.0);
  const double right_mass = dist.mass(z + 1.0, z + root);
  if (std::min(left_mass, right_mass) < gamma) {
    std::ostringstream os;
    os << "window mass precondition fails: min(" << left_mass << ", "
       << right_mass << ") < gamma = " << gamma;
    throw PreconditionError(os.str());
  }

  const int levels = static_cast<int>(std::floor(std::log2(root)));
  auto find_level = [&](bool negative) -> int {
    std::ostringstream trace;
    for (int l = 0; l <= levels; ++l) {
      const double lo = negative ? z - pow2(l + 1) : z + pow2(l);
      const double hi = negative ? z - pow2(l) : z + pow2(l + 1);
      const double m = dist.mass(lo, hi);
      const double threshold = cfg.c_detect * gamma * std::pow(2.0, -l / 8.0);
      if (m >= threshold) return l;
      trace << " level " << l << ": mass " << m << " < " << threshold << ";";
    }
    throw DetectionError(std::string("no dyadic level reaches the pigeonhole "
                                     "threshold on the ") +
                         (negative ? "negative" : "positive") + " side:" +
                         trace.str());
  };

  DetectionResult r;
  r.c_detect = cfg.c_detect;
  r.ell1 = find_level(true);
  r.ell2 = find_level(false);
  r.ell = std::max(r.ell1, r.ell2);

  // centering: lambda = z + E[xi - z | xi - z in M], with
  // M = [-2^(l1+1), -2^l1] u [2^l2, 2^(l2+1)]
  const double a1 = z - pow2(r.ell1 + 1), b1 = z - pow2(r.ell1);
  const double a2 = z + pow2(r.ell2), b2 = z + pow2(r.ell2 + 1);
  const double m1 = dist.mass(a1, b1);
  const double m2 = dist.mass(a2, b2);
  const double pm = dist.partial_mean(a1, b1) + dist.partial_mean(a2, b2);
  r.lambda = pm / (m1 + m2);

  r.H1 = IntervalUnion(a1 - r.lambda, b1 - r.lambda);
  r.H2 = IntervalUnion(a2 - r.lambda, b2 - r.lambda);
  r.mass1 = m1;
  r.mass2 = m2;
  return r;
}

std::vector<std::string> check_detection(const EntryDistribution& dist,
                                         double gamma, int N,
                                         const DetectionResult& r) {
  std::vector<std::string> violations;
  auto fail = [&](const std::string& msg) { violations.push_back(msg); };

  const int levels = static_cast<int>(
      std::floor(std::log2(std::sqrt(static_cast<double>(N)))));
  if (r.ell1 < 0 || r.ell1 > levels || r.ell2 < 0 || r.ell2 > levels)
    fail("levels outside [0, floor(log2 sqrt(N))]");
  if (r.ell != std::max(r.ell1, r.ell2)) fail("ell != max(ell1, ell2)");

  const double box = pow2(r.ell + 2);
  if (r.H1.lo() < -box || r.H1.hi() > box || r.H2.lo() < -box || r.H2.hi() > box)
    fail("H1 or H2 escapes the bounding box [-2^(l+2), 2^(l+2)]");

  if (set_distance(r.H1, r.H2) < pow2(r.ell) - 1e-12)
    fail("dist(H1, H2) < 2^ell");

  const double threshold =
      r.c_detect * gamma * std::pow(2.0, -static_cast<double>(r.ell) / 8.0);
  const double m1 = dist.mass(r.lambda + r.H1.lo(), r.lambda + r.H1.hi());
  const double m2 = dist.mass(r.lambda + r.H2.lo(), r.lambda + r.H2.hi());
  if (std::min(m1, m2) < threshold - 1e-12)
    fail("recomputed interval masses fall below c_detect * gamma * 2^(-l/8)");

  // |E <xi - lambda>_H| from scratch
  double mean = 0.0;
  for (const IntervalUnion* part : {&r.H1, &r.H2}) {
    const double lo = r.lambda + part->lo(), hi = r.lambda + part->hi();
    mean += dist.partial_mean(lo, hi) - r.lambda * dist.mass(lo, hi);
  }
  const double tol = mean_zero_tolerance(dist, r);
  if (std::abs(mean) > tol) {
    std::ostringstream os;
    os << "|E<xi-lambda>_H| = " << std::abs(mean) << " exceeds tolerance " << tol;
    fail(os.str());
  }
  return violations;
}

}  // namespace ssv
