#pragma once

#include <optional>
#include <vector>

#include "starcodim/rational.hpp"

namespace starcodim {

using DenseMatrix = std::vector<std::vector<Rational>>;

// In-place reduced row echelon form; returns pivot column indices.
// Pivot choice: first row with a nonzero entry in the leftmost open column.
std::vector<int> rref(DenseMatrix& m);

int rank_dense(DenseMatrix m);

// Inverse via Gauss-Jordan; nullopt when singular.
std::optional<DenseMatrix> invert(const DenseMatrix& m);

std::vector<Rational> mat_vec(const DenseMatrix& m, const std::vector<Rational>& v);
DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix identity_matrix(int n);

}  // namespace starcodim
