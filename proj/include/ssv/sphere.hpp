#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ssv/core.hpp"

namespace ssv {

enum class SphereLabel { peaky, almost_sparse, spread };

std::string to_string(SphereLabel label);

/// Which of the three sphere pieces a unit vector belongs to, for the
/// partition S = peaky u (almost-sparse \ peaky) u spread.
struct VectorClass {
  SphereLabel label = SphereLabel::spread;
  double theta = 0.0;
  int m = 0;
};

/// Sum of the m largest squared coordinates (exact selection).
double largest_squares_sum(const Vector& y, int m);

/// peaky iff |y|_inf >= theta; else almost_sparse iff the m largest squared
/// coordinates sum to >= 1/4; else spread. y must be unit to 1e-9.
VectorClass classify_vector(const Vector& y, double theta, int m);

/// For y not almost floor(sqrt(N))-sparse: a set J with |J| <= m,
/// |y chi_J| >= (1/2) sqrt(m/n) and |y chi_J|_inf <= 1 / floor(N^(1/4)).
/// Construction: keep the small coordinates, split them in index order into
/// blocks of size m, return the block of largest norm. 0-based indices.
std::vector<int> spread_witness(const Vector& y, int m, int N);

/// Membership descriptor for every target set the nets are built over:
/// norm_lo <= |x| <= norm_hi and |x|_inf <= linf_cap, with a small baked-in
/// tolerance on the boundaries. For such sets a grid cell that meets the set
/// always yields an in-cell member (solved along the segment between the
/// cell's min-norm and max-norm points), so grid nets have no covering holes.
struct NormBoxSet {
  double norm_lo = 0.0;
  double norm_hi = 1.0;
  double linf_cap = std::numeric_limits<double>::infinity();
  double tol = 1e-9;

  bool contains(const Vector& x) const;
  /// True when no point of the set exists in the given dimension.
  bool empty_in_dimension(int dim) const;
};

struct NetPoint {
  Vector point;              // dense vector in the ambient dimension
  std::vector<int> support;  // exact nonzero index set, ascending
};

struct Net {
  std::vector<NetPoint> points;
  double epsilon = 0.0;
  int m = 0;                       // sparsity level of the construction
  double cardinality_bound = 0.0;  // informational reference bound

  std::size_t size() const { return points.size(); }

  /// CSV: one line per point, "j1:v1;j2:v2;..." (0-based, ascending);
  /// a blank line encodes the zero vector.
  std::string to_csv() const;
  static Net parse_csv(const std::string& text, int ambient_dim);
};

/// min over net points of the support-projected distance
/// |y chi_{supp y'} - y'|; +inf on an empty net.
double covering_distance(const Net& net, const Vector& y);

/// Axis-aligned grid net of pitch epsilon/sqrt(dim) over [-1,1]^dim
/// intersected with K. Every member of K has a net point within epsilon.
/// Guarded to dim <= 10 and a bounded cell count.
Net ball_net(int dim, double epsilon, const NormBoxSet& K);

/// Generic-membership variant: cell representatives are located by probing
/// (center, corners, seeded samples), so thin sets may be missed; prefer the
/// NormBoxSet overload, which is exact.
Net ball_net(int dim, double epsilon,
             const std::function<bool(const Vector&)>& membership,
             std::uint64_t probe_seed = 0);

struct SupportPolicy {
  enum class Kind { enumerate_all, sample } kind = Kind::enumerate_all;
  int sample_count = 0;
  std::uint64_t seed = 0;

  static SupportPolicy enumerate_all_supports() { return {}; }
  static SupportPolicy sample_supports(int k, std::uint64_t seed = 0) {
    return {Kind::sample, k, seed};
  }
};

/// Union over supports J of size min(m,n) of the ball_net of T restricted to
/// span{e_i : i in J}; covers every vector that has an m-sparse representative
/// in T, in the support-projected metric. Enumeration is guarded to
/// C(n,m) <= 1e5; use the sample policy beyond that.
Net sparsified_net(int n, int m, double epsilon, const NormBoxSet& T,
                   const SupportPolicy& policy = {});

double binomial_coefficient(int n, int k);

}  // namespace ssv
