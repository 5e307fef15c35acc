#include "ssv/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace ssv {
namespace {

constexpr double kRankTolerance = 1e-10;

// Orthonormal basis of the column span, modified Gram-Schmidt with one
// re-orthogonalization pass per column.
Matrix orthonormal_basis(const Matrix& G) {
  Matrix Q(G.rows(), G.cols());
  Index rank = 0;
  for (Index j = 0; j < G.cols(); ++j) {
    Vector w = G.col(j);
    const double orig = w.norm();
    if (orig == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (Index k = 0; k < rank; ++k) w -= Q.col(k).dot(w) * Q.col(k);
    const double res = w.norm();
    if (res <= kRankTolerance * orig) continue;
    Q.col(rank++) = w / res;
  }
  return Q.leftCols(rank);
}

}  // namespace

double distance_to_subspace(const Vector& v, const Matrix& generators) {
  if (generators.rows() != v.size())
    throw ArgumentError("distance_to_subspace: generator rows must match v");
  const Matrix Q = orthonormal_basis(generators);
  Vector r = v;
  for (int pass = 0; pass < 2; ++pass)
    for (Index k = 0; k < Q.cols(); ++k) r -= Q.col(k).dot(r) * Q.col(k);
  return r.norm();
}

std::pair<double, double> singular_extremes(const Matrix& M) {
  if (!(M.rows() >= M.cols() && M.cols() >= 1))
    throw ArgumentError("singular_extremes requires N >= n >= 1");
  if (!M.allFinite())
    throw ArgumentError("singular_extremes requires finite entries");
  Eigen::BDCSVD<Matrix> svd(M);
  const auto& sv = svd.singularValues();
  return {sv(0), sv(sv.size() - 1)};
}

double operator_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  if (!M.allFinite()) throw ArgumentError("operator_norm requires finite entries");
  Eigen::BDCSVD<Matrix> svd(M.rows() >= M.cols() ? M : Matrix(M.transpose()));
  return svd.singularValues()(0);
}

Certificate certify_general(const MatrixSplit& split, const Net& net,
                            const std::vector<std::vector<int>>& supports,
                            double epsilon, bool full_space_mode,
                            const std::string& target_desc) {
  if (!(epsilon > 0)) throw ArgumentError("epsilon must be positive");
  if (net.points.empty())
    throw ArgumentError("certify_general: the net has no points");
  if (!supports.empty() && supports.size() != net.points.size())
    throw ArgumentError("certify_general: supports size must match the net");
  const Index n = split.total.cols();

  Certificate cert;
  cert.epsilon = epsilon;
  cert.target_set = target_desc;
  cert.regular_norm = operator_norm(split.regular);
  cert.per_point.reserve(net.points.size());

  std::vector<bool> in_J(static_cast<std::size_t>(n), false);
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    const auto& p = net.points[i];
    if (p.point.size() != n)
      throw ArgumentError("net point dimension does not match the split");
    std::fill(in_J.begin(), in_J.end(), full_space_mode);
    if (!full_space_mode) {
      const std::vector<int>& J = supports.empty() ? p.support : supports[i];
      for (int j : J) {
        if (j < 0 || j >= n) throw ArgumentError("support index out of range");
        in_J[static_cast<std::size_t>(j)] = true;
      }
      for (int j : p.support)
        if (!in_J[static_cast<std::size_t>(j)])
          throw PreconditionError(
              "certify_general: subspace index set must contain supp(y') "
              "(net point " + std::to_string(i) + ")");
    }
    Matrix G(split.total.rows(), n);
    for (Index j = 0; j < n; ++j)
      G.col(j) = in_J[static_cast<std::size_t>(j)] ? split.irregular.col(j)
                                                   : split.total.col(j);
    const double d = distance_to_subspace(split.regular * p.point, G);
    cert.per_point.emplace_back(static_cast<int>(i), d);
    h = std::min(h, d);
  }
  cert.h = h;
  cert.lower_bound = h - epsilon * cert.regular_norm;
  cert.vacuous = !(cert.lower_bound > 0.0);
  return cert;
}

}  // namespace ssv
