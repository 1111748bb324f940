#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spamlab/dense_matrix.hpp"

namespace spamlab {

// Eigenvalues in descending order; column j of `eigenvectors` is the unit
// eigenvector belonging to eigenvalues[j]. Ties keep the pre-sort order.
struct EigenResult {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;
};

struct JacobiOptions {
    double tol = 1e-10;   // relative to the Frobenius norm
    int max_sweeps = 100;
};

// Cyclic Jacobi rotations for a real symmetric matrix. Sweeps row pairs
// (p, q) in order until every off-diagonal magnitude drops below
// tol * ||A||_F. Throws DataError for non-square/asymmetric/non-finite input
// and NumericError when max_sweeps is exhausted.
EigenResult symmetric_eigen(const DenseMatrix& a, const JacobiOptions& opts = {});

// y <- A x for an implicitly represented symmetric operator.
using SymmetricOp =
    std::function<void(std::span<const double> x, std::span<double> y)>;

struct SubspaceOptions {
    std::size_t oversample = 10;
    std::size_t max_iters = 5000;
    double tol = 1e-11;  // relative change of the leading k Ritz values
    std::uint64_t seed = 0x5eedbeefcafe1234ull;  // fixed: results are deterministic
};

// Leading k eigenpairs of a symmetric positive-semidefinite operator via
// orthogonal iteration with Rayleigh-Ritz extraction (the projected problem
// is solved with symmetric_eigen). Used where forming the full matrix for
// Jacobi would be too large; deterministic for fixed inputs.
EigenResult subspace_eigen(const SymmetricOp& op, std::size_t dim, std::size_t k,
                           const SubspaceOptions& opts = {});

}  // namespace spamlab
