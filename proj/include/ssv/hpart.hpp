#pragma once

#include <vector>

#include "ssv/core.hpp"
#include "ssv/interval.hpp"

namespace ssv {

/// H-part of a scalar: s if s is in H, else 0.
inline double truncate(double s, const IntervalUnion& H) {
  return H.contains(s) ? s : 0.0;
}

/// Complementary part; truncate(x,H) + truncate_complement(x,H) == x exactly.
inline double truncate_complement(double s, const IntervalUnion& H) {
  return H.contains(s) ? 0.0 : s;
}

/// Entrywise H-part of any dense expression.
template <typename Derived>
Matrix truncate(const Eigen::MatrixBase<Derived>& m, const IntervalUnion& H) {
  return m.unaryExpr([&H](double s) { return truncate(s, H); });
}

template <typename Derived>
Matrix truncate_complement(const Eigen::MatrixBase<Derived>& m,
                           const IntervalUnion& H) {
  return m.unaryExpr([&H](double s) { return truncate_complement(s, H); });
}

/// The decomposition A + B = regular + irregular with regular = <A - l*1>_H.
/// The irregular part is computed as (A+B) - regular, and total is re-formed
/// as regular + irregular, so the partition identity regular + irregular ==
/// total holds bit-exactly; total matches A + B to one rounding per entry.
struct MatrixSplit {
  double lambda = 0.0;
  IntervalUnion H;
  Matrix regular;
  Matrix irregular;
  Matrix total;
};

MatrixSplit split_matrix(const Matrix& A, const Matrix& B, double lambda,
                         const IntervalUnion& H);

/// Generator columns of the subspace (M+Mp)(E_perp) + (<M>_Hbar + Mp)(E) for
/// the coordinate subspace E = span{e_j : j in J}: column j is
/// col_j(M+Mp) for j not in J and col_j(<M>_Hbar + Mp) for j in J.
/// Indices in J are 0-based.
Matrix build_subspace_basis(const Matrix& M, const Matrix& Mp,
                            const IntervalUnion& H, const std::vector<int>& J);

}  // namespace ssv
