#include "ssv/dist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace ssv {
namespace {

constexpr double kPi = 3.14159265358979323846;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Wichura's AS241 (PPND16): inverse of the standard normal cdf, accurate to
// about 1e-15 over (0,1).
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ArgumentError("normal_quantile requires p in (0,1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -val : val;
}

// Adaptive Simpson quadrature with one Richardson correction per split.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (!(a < b)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(std::abs(whole) * rel_tol, 1e-300);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

std::vector<double> load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open sample file: " + path);
  std::vector<double> out;
  double x;
  while (in >> x) out.push_back(x);
  if (out.empty()) throw ConfigurationError("sample file is empty: " + path);
  return out;
}

std::vector<double> split_params(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string piece;
  while (std::getline(is, piece, ',')) out.push_back(std::stod(piece));
  return out;
}

}  // namespace

EntryDistribution EntryDistribution::gaussian(double scale) {
  EntryDistribution d;
  d.family_ = Family::gaussian;
  d.scale_ = scale;
  d.name_ = "gaussian";
  if (!(scale > 0)) throw ConfigurationError("scale must be positive");
  return d;
}

EntryDistribution EntryDistribution::cauchy(double scale) {
  EntryDistribution d;
  d.family_ = Family::cauchy;
  d.scale_ = scale;
  d.name_ = "cauchy";
  if (!(scale > 0)) throw ConfigurationError("scale must be positive");
  return d;
}

EntryDistribution EntryDistribution::pareto(double shape, double scale) {
  if (!(shape > 0)) throw ConfigurationError("pareto shape must be positive");
  if (!(scale > 0)) throw ConfigurationError("scale must be positive");
  EntryDistribution d;
  d.family_ = Family::pareto;
  d.scale_ = scale;
  d.p1_ = shape;
  d.name_ = "pareto:" + std::to_string(shape);
  return d;
}

EntryDistribution EntryDistribution::rademacher(double scale) {
  EntryDistribution d;
  d.family_ = Family::rademacher;
  d.scale_ = scale;
  d.name_ = "rademacher";
  if (!(scale > 0)) throw ConfigurationError("scale must be positive");
  return d;
}

EntryDistribution EntryDistribution::uniform(double a, double b, double scale) {
  if (!(a < b)) throw ConfigurationError("uniform requires a < b");
  if (!(scale > 0)) throw ConfigurationError("scale must be positive");
  EntryDistribution d;
  d.family_ = Family::uniform;
  d.scale_ = scale;
  d.p1_ = a;
  d.p2_ = b;
  d.name_ = "uniform:" + std::to_string(a) + "," + std::to_string(b);
  return d;
}

EntryDistribution EntryDistribution::twopoint(double p, double x1, double x2,
                                              double scale) {
  if (!(p > 0 && p < 1)) throw ConfigurationError("twopoint requires p in (0,1)");
  if (!(scale > 0)) throw ConfigurationError("scale must be positive");
  EntryDistribution d;
  d.family_ = Family::twopoint;
  d.scale_ = scale;
  d.p1_ = p;
  d.p2_ = x1;
  d.p3_ = x2;
  d.name_ = "twopoint";
  return d;
}

EntryDistribution EntryDistribution::constant(double c, double scale) {
  if (!(scale > 0)) throw ConfigurationError("scale must be positive");
  EntryDistribution d;
  d.family_ = Family::constant;
  d.scale_ = scale;
  d.p1_ = c;
  d.name_ = "constant:" + std::to_string(c);
  return d;
}

EntryDistribution EntryDistribution::empirical(std::vector<double> samples,
                                               double scale) {
  if (samples.empty()) throw ConfigurationError("empirical law needs samples");
  if (!(scale > 0)) throw ConfigurationError("scale must be positive");
  std::sort(samples.begin(), samples.end());
  EntryDistribution d;
  d.family_ = Family::empirical;
  d.scale_ = scale;
  d.samples_ = std::make_shared<const std::vector<double>>(std::move(samples));
  d.name_ = "empirical";
  return d;
}

EntryDistribution EntryDistribution::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail =
      colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
  try {
    if (head == "gaussian") return gaussian();
    if (head == "cauchy") return cauchy();
    if (head == "rademacher") return rademacher();
    if (head == "pareto") {
      auto p = split_params(tail);
      if (p.size() != 1) throw ConfigurationError("pareto:a expects one parameter");
      return pareto(p[0]);
    }
    if (head == "uniform") {
      auto p = split_params(tail);
      if (p.size() != 2) throw ConfigurationError("uniform:a,b expects two parameters");
      return uniform(p[0], p[1]);
    }
    if (head == "twopoint") {
      auto p = split_params(tail);
      if (p.size() != 3)
        throw ConfigurationError("twopoint:p,x1,x2 expects three parameters");
      return twopoint(p[0], p[1], p[2]);
    }
    if (head == "constant") {
      auto p = split_params(tail);
      if (p.size() != 1) throw ConfigurationError("constant:c expects one parameter");
      return constant(p[0]);
    }
    if (head == "empirical") {
      if (tail.empty()) throw ConfigurationError("empirical:PATH expects a path");
      return empirical(load_samples(tail));
    }
  } catch (const ConfigurationError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigurationError("bad numeric parameter in distribution spec: " + spec);
  }
  throw ConfigurationError("unknown distribution spec: " + spec);
}

bool EntryDistribution::discrete() const {
  switch (family_) {
    case Family::rademacher:
    case Family::twopoint:
    case Family::constant:
    case Family::empirical:
      return true;
    default:
      return false;
  }
}

double EntryDistribution::sample_from_uniform(double u) const {
  switch (family_) {
    case Family::gaussian:
      return scale_ * normal_quantile(u);
    case Family::cauchy:
      return scale_ * std::tan(kPi * (u - 0.5));
    case Family::pareto:
      return scale_ * std::pow(1.0 - u, -1.0 / p1_);
    case Family::rademacher:
      return u < 0.5 ? -scale_ : scale_;
    case Family::uniform:
      return scale_ * (p1_ + u * (p2_ - p1_));
    case Family::twopoint:
      return u < p1_ ? scale_ * p2_ : scale_ * p3_;
    case Family::constant:
      return scale_ * p1_;
    case Family::empirical: {
      const auto& s = *samples_;
      const auto idx = std::min<std::size_t>(
          s.size() - 1, static_cast<std::size_t>(u * static_cast<double>(s.size())));
      return scale_ * s[idx];
    }
  }
  throw ArgumentError("unreachable family");
}

double EntryDistribution::base_cdf(double x) const {
  switch (family_) {
    case Family::gaussian:
      return normal_cdf(x);
    case Family::cauchy:
      return 0.5 + std::atan(x) / kPi;
    case Family::pareto:
      return x < 1.0 ? 0.0 : 1.0 - std::pow(x, -p1_);
    case Family::rademacher:
      return x < -1.0 ? 0.0 : (x < 1.0 ? 0.5 : 1.0);
    case Family::uniform:
      if (x < p1_) return 0.0;
      if (x >= p2_) return 1.0;
      return (x - p1_) / (p2_ - p1_);
    case Family::twopoint: {
      const double lo = std::min(p2_, p3_), hi = std::max(p2_, p3_);
      const double plo = (p2_ <= p3_) ? p1_ : 1.0 - p1_;
      if (x < lo) return 0.0;
      if (x < hi) return plo;
      return 1.0;
    }
    case Family::constant:
      return x < p1_ ? 0.0 : 1.0;
    case Family::empirical: {
      const auto& s = *samples_;
      return static_cast<double>(std::upper_bound(s.begin(), s.end(), x) -
                                 s.begin()) /
             static_cast<double>(s.size());
    }
  }
  throw ArgumentError("unreachable family");
}

double EntryDistribution::base_cdf_left(double x) const {
  if (!discrete()) return base_cdf(x);
  switch (family_) {
    case Family::rademacher:
      return x <= -1.0 ? 0.0 : (x <= 1.0 ? 0.5 : 1.0);
    case Family::twopoint: {
      const double lo = std::min(p2_, p3_), hi = std::max(p2_, p3_);
      const double plo = (p2_ <= p3_) ? p1_ : 1.0 - p1_;
      if (x <= lo) return 0.0;
      if (x <= hi) return plo;
      return 1.0;
    }
    case Family::constant:
      return x <= p1_ ? 0.0 : 1.0;
    case Family::empirical: {
      const auto& s = *samples_;
      return static_cast<double>(std::lower_bound(s.begin(), s.end(), x) -
                                 s.begin()) /
             static_cast<double>(s.size());
    }
    default:
      return base_cdf(x);
  }
}

double EntryDistribution::base_quantile(double q) const {
  if (!(q > 0.0 && q <= 1.0))
    throw ArgumentError("quantile requires q in (0,1]");
  switch (family_) {
    case Family::gaussian:
      return q == 1.0 ? std::numeric_limits<double>::infinity()
                      : normal_quantile(q);
    case Family::cauchy:
      return q == 1.0 ? std::numeric_limits<double>::infinity()
                      : std::tan(kPi * (q - 0.5));
    case Family::pareto:
      return q == 1.0 ? std::numeric_limits<double>::infinity()
                      : std::pow(1.0 - q, -1.0 / p1_);
    case Family::rademacher:
      return q <= 0.5 ? -1.0 : 1.0;
    case Family::uniform:
      return p1_ + q * (p2_ - p1_);
    case Family::twopoint: {
      const double lo = std::min(p2_, p3_), hi = std::max(p2_, p3_);
      const double plo = (p2_ <= p3_) ? p1_ : 1.0 - p1_;
      return q <= plo ? lo : hi;
    }
    case Family::constant:
      return p1_;
    case Family::empirical: {
      const auto& s = *samples_;
      const double M = static_cast<double>(s.size());
      const auto k = static_cast<std::size_t>(std::ceil(q * M));
      return s[std::min<std::size_t>(s.size() - 1, k == 0 ? 0 : k - 1)];
    }
  }
  throw ArgumentError("unreachable family");
}

double EntryDistribution::base_density(double x) const {
  switch (family_) {
    case Family::gaussian:
      return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
    case Family::cauchy:
      return 1.0 / (kPi * (1.0 + x * x));
    case Family::pareto:
      return x < 1.0 ? 0.0 : p1_ * std::pow(x, -p1_ - 1.0);
    case Family::uniform:
      return (x >= p1_ && x <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
    default:
      throw ArgumentError("density undefined for discrete family");
  }
}

double EntryDistribution::base_partial_mean(double lo, double hi) const {
  switch (family_) {
    case Family::rademacher: {
      double m = 0.0;
      if (lo <= -1.0 && -1.0 <= hi) m += -0.5;
      if (lo <= 1.0 && 1.0 <= hi) m += 0.5;
      return m;
    }
    case Family::twopoint: {
      double m = 0.0;
      if (lo <= p2_ && p2_ <= hi) m += p1_ * p2_;
      if (lo <= p3_ && p3_ <= hi) m += (1.0 - p1_) * p3_;
      return m;
    }
    case Family::constant:
      return (lo <= p1_ && p1_ <= hi) ? p1_ : 0.0;
    case Family::empirical: {
      const auto& s = *samples_;
      auto first = std::lower_bound(s.begin(), s.end(), lo);
      auto last = std::upper_bound(s.begin(), s.end(), hi);
      double sum = std::accumulate(first, last, 0.0);
      return sum / static_cast<double>(s.size());
    }
    default: {
      // clip to the support where it is known; the integrand vanishes outside
      double a = lo, b = hi;
      if (family_ == Family::pareto) a = std::max(a, 1.0);
      if (family_ == Family::uniform) {
        a = std::max(a, p1_);
        b = std::min(b, p2_);
      }
      if (!(a < b)) return 0.0;
      return integrate([this](double x) { return x * base_density(x); }, a, b,
                       1e-11);
    }
  }
}

double EntryDistribution::cdf(double x) const { return base_cdf(x / scale_); }

double EntryDistribution::cdf_left(double x) const {
  return base_cdf_left(x / scale_);
}

double EntryDistribution::quantile(double q) const {
  return scale_ * base_quantile(q);
}

double EntryDistribution::mass(double lo, double hi) const {
  if (!(lo <= hi)) return 0.0;
  return std::max(0.0, cdf(hi) - cdf_left(lo));
}

double EntryDistribution::partial_mean(double lo, double hi) const {
  if (!(lo <= hi)) return 0.0;
  return scale_ * base_partial_mean(lo / scale_, hi / scale_);
}

double EntryDistribution::concentration(double alpha) const {
  if (!(alpha >= 0)) throw ArgumentError("concentration requires alpha >= 0");
  const double a = alpha / scale_;
  switch (family_) {
    case Family::gaussian:
      return 2.0 * normal_cdf(a) - 1.0;
    case Family::cauchy:
      return 2.0 * std::atan(a) / kPi;
    case Family::pareto:
      // decreasing density: the best window is [1, 1+2a]
      return 1.0 - std::pow(1.0 + 2.0 * a, -p1_);
    case Family::rademacher:
      return a >= 1.0 ? 1.0 : 0.5;
    case Family::uniform:
      return std::min(1.0, 2.0 * a / (p2_ - p1_));
    case Family::twopoint:
      return 2.0 * a >= std::abs(p3_ - p2_) ? 1.0 : std::max(p1_, 1.0 - p1_);
    case Family::constant:
      return 1.0;
    case Family::empirical:
      return concentration_estimate(*samples_, a).estimate;
  }
  throw ArgumentError("unreachable family");
}

std::optional<double> EntryDistribution::support_bound() const {
  switch (family_) {
    case Family::rademacher:
      return scale_;
    case Family::uniform:
      return scale_ * std::max(std::abs(p1_), std::abs(p2_));
    case Family::twopoint:
      return scale_ * std::max(std::abs(p2_), std::abs(p3_));
    case Family::constant:
      return scale_ * std::abs(p1_);
    case Family::empirical: {
      const auto& s = *samples_;
      return scale_ * std::max(std::abs(s.front()), std::abs(s.back()));
    }
    default:
      return std::nullopt;
  }
}

std::optional<double> EntryDistribution::mean() const {
  switch (family_) {
    case Family::gaussian:
      return 0.0;
    case Family::cauchy:
      return std::nullopt;
    case Family::pareto:
      if (p1_ <= 1.0) return std::nullopt;
      return scale_ * p1_ / (p1_ - 1.0);
    case Family::rademacher:
      return 0.0;
    case Family::uniform:
      return scale_ * 0.5 * (p1_ + p2_);
    case Family::twopoint:
      return scale_ * (p1_ * p2_ + (1.0 - p1_) * p3_);
    case Family::constant:
      return scale_ * p1_;
    case Family::empirical: {
      const auto& s = *samples_;
      return scale_ * std::accumulate(s.begin(), s.end(), 0.0) /
             static_cast<double>(s.size());
    }
  }
  return std::nullopt;
}

ConcentrationQuery concentration_estimate(const std::vector<double>& sorted_samples,
                                          double alpha) {
  if (sorted_samples.empty())
    throw ArgumentError("concentration_estimate needs at least one sample");
  if (!(alpha >= 0)) throw ArgumentError("alpha must be non-negative");
  const std::size_t M = sorted_samples.size();
  std::size_t best = 1;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < M; ++lo) {
    if (hi < lo) hi = lo;
    while (hi + 1 < M && sorted_samples[hi + 1] <= sorted_samples[lo] + 2.0 * alpha)
      ++hi;
    best = std::max(best, hi - lo + 1);
  }
  ConcentrationQuery q;
  q.alpha = alpha;
  q.sample_count = M;
  q.estimate = static_cast<double>(best) / static_cast<double>(M);
  q.ci_halfwidth =
      1.96 * std::sqrt(q.estimate * (1.0 - q.estimate) / static_cast<double>(M));
  return q;
}

std::string to_string(CaseId id) {
  switch (id) {
    case CaseId::right_deficient: return "right_deficient";
    case CaseId::left_deficient: return "left_deficient";
    case CaseId::two_sided: return "two_sided";
  }
  return "?";
}

double quantile_shift(const EntryDistribution& dist, double beta) {
  if (!(beta > 0 && beta < 1)) throw ArgumentError("beta must be in (0,1)");
  return dist.quantile(0.5 * beta) + 1.0;
}

CaseSelection select_shift_and_case(const EntryDistribution& dist, double beta,
                                    int N) {
  if (!(beta > 0 && beta < 1)) throw ArgumentError("beta must be in (0,1)");
  if (N < 4) throw ArgumentError("select_shift_and_case requires N >= 4");
  CaseSelection sel;
  sel.q_measured = dist.concentration(1.0);
  if (sel.q_measured > 1.0 - beta) {
    std::ostringstream os;
    os << "anti-concentration precondition fails: Q(a11,1) = " << sel.q_measured
       << " > 1 - beta = " << 1.0 - beta;
    throw PreconditionError(os.str());
  }
  sel.z = quantile_shift(dist, beta);
  sel.gamma = 0.25 * beta;
  const double root = std::sqrt(static_cast<double>(N));
  sel.left_mass = dist.mass(sel.z - root, sel.z - 1.0);
  sel.right_mass = dist.mass(sel.z + 1.0, sel.z + root);
  if (std::min(sel.left_mass, sel.right_mass) >= sel.gamma) {
    sel.case_id = CaseId::two_sided;
  } else if (sel.right_mass < sel.gamma) {
    sel.case_id = CaseId::right_deficient;
  } else {
    sel.case_id = CaseId::left_deficient;
  }
  return sel;
}

Matrix sample_matrix(const EntryDistribution& dist, int N, int n,
                     std::uint64_t seed) {
  if (!(N >= n && n >= 1)) throw ArgumentError("sample_matrix requires N >= n >= 1");
  Matrix A(N, n);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < n; ++j)
      A(i, j) = dist.sample(seed, static_cast<std::uint64_t>(i),
                            static_cast<std::uint64_t>(j));
  return A;
}

}  // namespace ssv
