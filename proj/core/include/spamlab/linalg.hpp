#pragma once

#include <vector>

#include "spamlab/dense_matrix.hpp"

namespace spamlab {

// Solves A x = b for symmetric positive-definite A via Cholesky (in place on
// the copy). Throws NumericError when a pivot is not strictly positive.
std::vector<double> cholesky_solve(DenseMatrix a, std::vector<double> b);

// Solves A x = b via LU with partial pivoting (in place on the copy).
// Throws NumericError on a (near-)zero pivot.
std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b);

}  // namespace spamlab
