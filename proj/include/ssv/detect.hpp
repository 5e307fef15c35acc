#pragma once

#include <string>
#include <vector>

#include "ssv/bounds.hpp"
#include "ssv/dist.hpp"
#include "ssv/interval.hpp"

namespace ssv {

/// Output of the dyadic interval detection: levels, shift and the two
/// intervals, expressed in (xi - lambda) coordinates so that
/// <xi - lambda>_{H1 u H2} has mean zero.
struct DetectionResult {
  int ell1 = 0;
  int ell2 = 0;
  int ell = 0;  // max(ell1, ell2)
  double lambda = 0.0;
  IntervalUnion H1;
  IntervalUnion H2;
  double mass1 = 0.0;  // P{xi - lambda in H1}
  double mass2 = 0.0;
  double c_detect = 0.0;

  IntervalUnion H() const;  // H1 u H2
};

/// Search the dyadic windows z - [2^l, 2^(l+1)] and z + [2^l, 2^(l+1)] for
/// the smallest levels whose mass clears c_detect * gamma * 2^(-l/8), then
/// center so the truncated law has mean zero. Requires the two coarse
/// windows [z-sqrt(N), z-1] and [z+1, z+sqrt(N)] to carry mass >= gamma.
DetectionResult find_dyadic_intervals(const EntryDistribution& dist, double z,
                                      double gamma, int N,
                                      const ConstantsConfig& cfg);

/// Independent post-hoc verification: recomputes masses, the gap, the
/// bounding box and |E<xi - lambda>_H| from the distribution and the result
/// alone. Returns a list of violated conditions (empty = pass).
std::vector<std::string> check_detection(const EntryDistribution& dist,
                                         double gamma, int N,
                                         const DetectionResult& result);

}  // namespace ssv
