#include "ssv/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>

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

constexpr double kDefaultNetConstant = 16.309690971296290551;  // 6e
constexpr std::size_t kMaxCells = 1u << 24;

struct CellGrid {
  double pitch;
  int per_axis;
};

CellGrid make_grid(int dim, double epsilon) {
  if (dim < 1) throw ArgumentError("net dimension must be positive");
  if (dim > 10)
    throw ResourceError("ball_net dimension " + std::to_string(dim) +
                        " exceeds the desk-scale guard (10)");
  if (!(epsilon > 0 && epsilon <= 1))
    throw ArgumentError("epsilon must lie in (0,1]");
  const double pitch = epsilon / std::sqrt(static_cast<double>(dim));
  const int per_axis = static_cast<int>(std::ceil(2.0 / pitch));
  double cells = std::pow(static_cast<double>(per_axis), dim);
  if (cells > static_cast<double>(kMaxCells))
    throw ResourceError("grid of " + std::to_string(cells) +
                        " cells exceeds the cell budget; enlarge epsilon");
  return {pitch, per_axis};
}

// In-cell member of {norm_lo <= |x| <= norm_hi} for a box cell (already
// clamped to the l_inf cap): walk the segment from the cell's min-norm point
// to its max-norm point. The norm is non-decreasing along that segment, so
// the quadratic |p(s)|^2 = tau^2 has a root in [0,1] whenever the cell's norm
// range meets [norm_lo, norm_hi].
bool cell_member(const std::vector<double>& lo, const std::vector<double>& hi,
                 const NormBoxSet& K, Vector& out) {
  const int dim = static_cast<int>(lo.size());
  Vector pmin(dim), pmax(dim);
  for (int k = 0; k < dim; ++k) {
    if (lo[k] > hi[k]) return false;
    pmin[k] = (lo[k] > 0.0) ? lo[k] : (hi[k] < 0.0 ? hi[k] : 0.0);
    pmax[k] = (std::abs(lo[k]) >= std::abs(hi[k])) ? lo[k] : hi[k];
  }
  const double min_norm = pmin.norm();
  const double max_norm = pmax.norm();
  const double target_lo = std::max(K.norm_lo, min_norm);
  const double target_hi = std::min(K.norm_hi, max_norm);
  if (target_lo > target_hi) return false;
  const double tau = 0.5 * (target_lo + target_hi);
  const Vector d = pmax - pmin;
  const double a = d.squaredNorm();
  if (a == 0.0) {
    out = pmin;
    return true;
  }
  const double b = 2.0 * pmin.dot(d);
  const double c = pmin.squaredNorm() - tau * tau;
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  double s = (-b + std::sqrt(disc)) / (2.0 * a);
  s = std::min(1.0, std::max(0.0, s));
  out = pmin + s * d;
  return true;
}

std::uint64_t point_key_piece(double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  return bits;
}

}  // namespace

std::string to_string(SphereLabel label) {
  switch (label) {
    case SphereLabel::peaky: return "peaky";
    case SphereLabel::almost_sparse: return "almost_sparse";
    case SphereLabel::spread: return "spread";
  }
  return "?";
}

double largest_squares_sum(const Vector& y, int m) {
  const int n = static_cast<int>(y.size());
  if (m < 1 || m > n) throw ArgumentError("m must satisfy 1 <= m <= n");
  std::vector<double> sq(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sq[static_cast<std::size_t>(i)] = y[i] * y[i];
  std::nth_element(sq.begin(), sq.begin() + (n - m), sq.end());
  double sum = 0.0;
  for (int i = n - m; i < n; ++i) sum += sq[static_cast<std::size_t>(i)];
  return sum;
}

VectorClass classify_vector(const Vector& y, double theta, int m) {
  if (!(theta > 0)) throw ArgumentError("theta must be positive");
  if (std::abs(y.norm() - 1.0) > 1e-9)
    throw ArgumentError("classify_vector requires a unit vector");
  const int n = static_cast<int>(y.size());
  if (m < 1 || m > n) throw ArgumentError("m must satisfy 1 <= m <= n");
  VectorClass c;
  c.theta = theta;
  c.m = m;
  if (y.lpNorm<Eigen::Infinity>() >= theta) {
    c.label = SphereLabel::peaky;
  } else if (largest_squares_sum(y, m) >= 0.25) {
    c.label = SphereLabel::almost_sparse;
  } else {
    c.label = SphereLabel::spread;
  }
  return c;
}

std::vector<int> spread_witness(const Vector& y, int m, int N) {
  const int n = static_cast<int>(y.size());
  if (!(N >= n && n >= m && m >= 1))
    throw ArgumentError("spread_witness requires N >= n >= m >= 1");
  const int root = floor_sqrt(N);
  if (largest_squares_sum(y, std::min(root, n)) >= 0.25)
    throw PreconditionError(
        "spread_witness requires a vector that is not almost sqrt(N)-sparse");
  const double cap = 1.0 / static_cast<double>(floor_fourth_root(N));
  std::vector<int> small;
  small.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    if (std::abs(y[j]) <= cap) small.push_back(j);

  std::vector<int> best;
  double best_norm2 = -1.0;
  for (std::size_t start = 0; start < small.size();
       start += static_cast<std::size_t>(m)) {
    const std::size_t stop =
        std::min(small.size(), start + static_cast<std::size_t>(m));
    double norm2 = 0.0;
    for (std::size_t k = start; k < stop; ++k) norm2 += y[small[k]] * y[small[k]];
    if (norm2 > best_norm2) {
      best_norm2 = norm2;
      best.assign(small.begin() + static_cast<std::ptrdiff_t>(start),
                  small.begin() + static_cast<std::ptrdiff_t>(stop));
    }
  }
  return best;
}

bool NormBoxSet::contains(const Vector& x) const {
  const double norm = x.norm();
  if (norm < norm_lo - tol || norm > norm_hi + tol) return false;
  if (std::isfinite(linf_cap) && x.lpNorm<Eigen::Infinity>() > linf_cap + tol)
    return false;
  return true;
}

bool NormBoxSet::empty_in_dimension(int dim) const {
  const double reach = std::isfinite(linf_cap)
                           ? linf_cap * std::sqrt(static_cast<double>(dim))
                           : std::numeric_limits<double>::infinity();
  return std::min(norm_hi, reach) < norm_lo - tol;
}

std::string Net::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& p : points) {
    bool first = true;
    for (int j : p.support) {
      if (!first) os << ';';
      os << j << ':' << p.point[j];
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

Net Net::parse_csv(const std::string& text, int ambient_dim) {
  Net net;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    NetPoint p;
    p.point = Vector::Zero(ambient_dim);
    if (!line.empty()) {
      std::istringstream ls(line);
      std::string pair;
      while (std::getline(ls, pair, ';')) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos)
          throw ArgumentError("net point entry '" + pair + "' is not j:v");
        const int j = std::stoi(pair.substr(0, colon));
        if (j < 0 || j >= ambient_dim)
          throw ArgumentError("net point index out of range");
        p.point[j] = std::stod(pair.substr(colon + 1));
      }
    }
    for (int j = 0; j < ambient_dim; ++j)
      if (p.point[j] != 0.0) p.support.push_back(j);
    net.points.push_back(std::move(p));
  }
  return net;
}

double covering_distance(const Net& net, const Vector& y) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : net.points) {
    double d2 = 0.0;
    for (int j : p.support) {
      const double diff = y[j] - p.point[j];
      d2 += diff * diff;
    }
    best = std::min(best, std::sqrt(d2));
  }
  return best;
}

Net ball_net(int dim, double epsilon, const NormBoxSet& K) {
  if (dim < 1) throw ArgumentError("net dimension must be positive");
  if (dim > 10)
    throw ResourceError("ball_net dimension " + std::to_string(dim) +
                        " exceeds the desk-scale guard (10)");
  if (!(epsilon > 0 && epsilon <= 1))
    throw ArgumentError("epsilon must lie in (0,1]");
  Net net;
  net.epsilon = epsilon;
  net.m = dim;
  net.cardinality_bound = std::pow(3.0 / epsilon, dim);
  if (K.empty_in_dimension(dim)) return net;

  const double pitch = epsilon / std::sqrt(static_cast<double>(dim));
  // only cells meeting [-w, w]^dim can meet K
  const double w = std::min(1.0, K.linf_cap);
  const int k_lo = std::max(
      0, static_cast<int>(std::floor((1.0 - w) / pitch)));
  const int k_hi = std::min(
      static_cast<int>(std::ceil(2.0 / pitch)) - 1,
      static_cast<int>(std::floor((1.0 + w) / pitch)));
  if (k_hi < k_lo) return net;
  const double window = std::pow(static_cast<double>(k_hi - k_lo + 1), dim);
  if (window > static_cast<double>(kMaxCells))
    throw ResourceError("grid of " + std::to_string(window) +
                        " cells exceeds the cell budget; enlarge epsilon");

  std::vector<int> idx(static_cast<std::size_t>(dim), k_lo);
  std::vector<double> lo(static_cast<std::size_t>(dim)),
      hi(static_cast<std::size_t>(dim));
  while (true) {
    bool feasible = true;
    for (int k = 0; k < dim && feasible; ++k) {
      double l = -1.0 + idx[static_cast<std::size_t>(k)] * pitch;
      double h = std::min(1.0, l + pitch);
      l = std::max(l, -w);
      h = std::min(h, w);
      lo[static_cast<std::size_t>(k)] = l;
      hi[static_cast<std::size_t>(k)] = h;
      feasible = l <= h;
    }
    if (feasible) {
      Vector member;
      if (cell_member(lo, hi, K, member)) {
        NetPoint p;
        p.point = member;
        for (int j = 0; j < dim; ++j)
          if (member[j] != 0.0) p.support.push_back(j);
        net.points.push_back(std::move(p));
      }
    }
    int k = 0;
    for (; k < dim; ++k) {
      if (++idx[static_cast<std::size_t>(k)] <= k_hi) break;
      idx[static_cast<std::size_t>(k)] = k_lo;
    }
    if (k == dim) break;
  }
  return net;
}

Net ball_net(int dim, double epsilon,
             const std::function<bool(const Vector&)>& membership,
             std::uint64_t probe_seed) {
  const auto grid = make_grid(dim, epsilon);
  Net net;
  net.epsilon = epsilon;
  net.m = dim;
  net.cardinality_bound = std::pow(3.0 / epsilon, dim);

  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  std::uint64_t cell_counter = 0;
  while (true) {
    Vector lo(dim), hi(dim);
    for (int k = 0; k < dim; ++k) {
      lo[k] = -1.0 + idx[static_cast<std::size_t>(k)] * grid.pitch;
      hi[k] = std::min(1.0, lo[k] + grid.pitch);
    }
    // probes: center, corners, then seeded uniform points in the cell
    bool found = false;
    Vector probe = 0.5 * (lo + hi);
    if (membership(probe)) found = true;
    if (!found && dim <= 6) {
      for (std::uint32_t mask = 0; mask < (1u << dim) && !found; ++mask) {
        for (int k = 0; k < dim; ++k)
          probe[k] = (mask >> k) & 1u ? hi[k] : lo[k];
        found = membership(probe);
      }
    }
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
      for (int k = 0; k < dim; ++k) {
        const double u = counter_uniform(probe_seed ^ cell_counter,
                                         static_cast<std::uint64_t>(attempt),
                                         static_cast<std::uint64_t>(k));
        probe[k] = lo[k] + u * (hi[k] - lo[k]);
      }
      found = membership(probe);
    }
    if (found) {
      NetPoint p;
      p.point = probe;
      for (int j = 0; j < dim; ++j)
        if (probe[j] != 0.0) p.support.push_back(j);
      net.points.push_back(std::move(p));
    }
    ++cell_counter;
    int k = 0;
    for (; k < dim; ++k) {
      if (++idx[static_cast<std::size_t>(k)] < grid.per_axis) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
    if (k == dim) break;
  }
  return net;
}

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

Net sparsified_net(int n, int m, double epsilon, const NormBoxSet& T,
                   const SupportPolicy& policy) {
  if (m < 1 || m > n) throw ArgumentError("sparsified_net requires 1 <= m <= n");
  Net net;
  net.epsilon = epsilon;
  net.m = m;
  net.cardinality_bound =
      std::pow(kDefaultNetConstant * n / (epsilon * m), m);

  if (policy.kind == SupportPolicy::Kind::enumerate_all &&
      binomial_coefficient(n, m) > 1e5)
    throw ResourceError(
        "support enumeration exceeds the C(n,m) <= 1e5 guard; use the "
        "sample support policy");

  // The restricted set is the same in every support's coordinates, so the
  // per-support net is computed once and embedded.
  const Net base = ball_net(m, epsilon, T);
  if (base.points.empty()) return net;

  std::vector<std::vector<int>> supports;
  if (policy.kind == SupportPolicy::Kind::enumerate_all) {
    std::vector<int> comb(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
      supports.push_back(comb);
      int i = m - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - m + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  } else {
    if (policy.sample_count < 1)
      throw ArgumentError("sample support policy needs a positive count");
    std::map<std::vector<int>, bool> seen;
    for (int s = 0; s < policy.sample_count; ++s) {
      // partial Fisher-Yates with counter-keyed uniforms
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
      for (int i = 0; i < m; ++i) {
        const auto r = counter_hash(policy.seed, static_cast<std::uint64_t>(s),
                                    static_cast<std::uint64_t>(i));
        const int j = i + static_cast<int>(r % static_cast<std::uint64_t>(n - i));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
      }
      std::vector<int> J(perm.begin(), perm.begin() + m);
      std::sort(J.begin(), J.end());
      if (!seen.emplace(J, true).second) continue;
      supports.push_back(std::move(J));
    }
  }

  std::map<std::vector<std::pair<int, std::uint64_t>>, bool> dedupe;
  for (const auto& J : supports) {
    for (const auto& bp : base.points) {
      NetPoint p;
      p.point = Vector::Zero(n);
      for (int k = 0; k < m; ++k) {
        const double v = bp.point[k];
        if (v != 0.0) {
          p.point[J[static_cast<std::size_t>(k)]] = v;
          p.support.push_back(J[static_cast<std::size_t>(k)]);
        }
      }
      std::sort(p.support.begin(), p.support.end());
      std::vector<std::pair<int, std::uint64_t>> key;
      key.reserve(p.support.size());
      for (int j : p.support) key.emplace_back(j, point_key_piece(p.point[j]));
      if (!dedupe.emplace(std::move(key), true).second) continue;
      net.points.push_back(std::move(p));
    }
  }
  return net;
}

}  // namespace ssv
