#include "ssv/hpart.hpp"

#include <algorithm>

namespace ssv {

MatrixSplit split_matrix(const Matrix& A, const Matrix& B, double lambda,
                         const IntervalUnion& H) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw ArgumentError("split_matrix: A and B must have the same shape");
  MatrixSplit s;
  s.lambda = lambda;
  s.H = H;
  s.regular = truncate((A.array() - lambda).matrix(), H);
  s.irregular = (A + B) - s.regular;
  // total is re-formed from the two parts, so the partition identity holds
  // bit for bit; it agrees with A + B to one rounding per entry
  s.total = s.regular + s.irregular;
  return s;
}

Matrix build_subspace_basis(const Matrix& M, const Matrix& Mp,
                            const IntervalUnion& H, const std::vector<int>& J) {
  if (M.rows() != Mp.rows() || M.cols() != Mp.cols())
    throw ArgumentError("build_subspace_basis: M and Mp must have the same shape");
  const Index n = M.cols();
  std::vector<bool> in_J(static_cast<std::size_t>(n), false);
  for (int j : J) {
    if (j < 0 || j >= n)
      throw ArgumentError("build_subspace_basis: index out of range");
    in_J[static_cast<std::size_t>(j)] = true;
  }
  Matrix gen(M.rows(), n);
  for (Index j = 0; j < n; ++j) {
    if (in_J[static_cast<std::size_t>(j)]) {
      gen.col(j) = truncate_complement(M.col(j), H) + Mp.col(j);
    } else {
      gen.col(j) = M.col(j) + Mp.col(j);
    }
  }
  return gen;
}

}  // namespace ssv
