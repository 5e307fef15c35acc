#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ssv/core.hpp"
#include "ssv/hpart.hpp"
#include "ssv/sphere.hpp"

namespace ssv {

/// A deterministic lower-bound certificate for inf |D y| over a covered
/// vector class: lower_bound = h - epsilon * |regular|, where h is the
/// smallest distance from regular*y' to the subspace D(E^perp) + irregular(E)
/// over the net. May be negative (vacuous); it is returned as computed.
struct Certificate {
  double h = 0.0;
  double epsilon = 0.0;
  double regular_norm = 0.0;
  double lower_bound = 0.0;
  bool vacuous = false;  // lower_bound <= 0
  std::vector<std::pair<int, double>> per_point;  // (net point id, distance)
  std::string target_set;
};

/// |v - P_F v| for F = span(generators), via modified Gram-Schmidt with a
/// relative rank tolerance: a generator column is dropped when its residual
/// after projection is <= 1e-10 times its original norm.
double distance_to_subspace(const Vector& v, const Matrix& generators);

/// Largest and smallest singular values by full decomposition (desk scale).
/// Requires N >= n >= 1 and finite entries.
std::pair<double, double> singular_extremes(const Matrix& M);

/// Operator norm |M| (largest singular value), any shape.
double operator_norm(const Matrix& M);

/// The net-certificate evaluation. For each net point y' with subspace index
/// set J (J must contain supp y'), the subspace generators are col_j(D) for
/// j not in J and col_j(irregular) for j in J. full_space_mode forces
/// J = {0..n-1} for every point, which reduces the subspace to span(irregular).
/// `supports` may be empty, in which case each point's own recorded support
/// is used. Covering of the target set is the caller's contract; the
/// descriptor is recorded in target_set.
Certificate certify_general(const MatrixSplit& split, const Net& net,
                            const std::vector<std::vector<int>>& supports,
                            double epsilon, bool full_space_mode,
                            const std::string& target_desc = "");

}  // namespace ssv
