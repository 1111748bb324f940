#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spamlab/dense_matrix.hpp"
#include "spamlab/features.hpp"

namespace spamlab {

// Principal components fitted on training rows. `components` holds one
// orthonormal direction per row (r x d, descending variance); the sign of
// each is fixed so its largest-magnitude coordinate is positive.
//
// Only informative directions (variance above a relative rank tolerance) are
// kept: requesting k components may yield r < k of them, in which case
// rank_deficient is set. For all-identical rows everything is empty and the
// flag is set.
struct PcaModel {
    std::vector<double> mean;
    DenseMatrix components;
    std::vector<double> eigenvalues;              // variance along each component
    std::vector<double> explained_variance_ratio; // eigenvalue / total_variance
    double total_variance = 0.0;                  // trace of the covariance
    bool rank_deficient = false;

    std::size_t n_components() const { return components.rows(); }
};

enum class PcaPath {
    automatic,   // covariance (d x d) when d <= n, Gram (n x n) otherwise
    covariance,
    gram,
};

struct PcaOptions {
    PcaPath path = PcaPath::automatic;
    // Eigenproblems up to this side length use dense Jacobi; larger ones use
    // deterministic subspace iteration on the implicit operator.
    std::size_t dense_eigen_limit = 200;
};

// Requires n >= 2 rows and 1 <= k <= min(n - 1, d). Covariance uses the
// 1/(n-1) convention. The Gram path recovers d-dimensional components from
// the n x n problem.
PcaModel pca_fit(const FeatureMatrix& x, std::size_t k, const PcaOptions& opts = {});

// Projects rows onto the fitted components: Z = (X - mean) * components^T.
DenseMatrix pca_transform(const PcaModel& model, const FeatureMatrix& x);

// (1-based component index, explained variance ratio) pairs.
std::vector<std::pair<std::size_t, double>> scree_data(const PcaModel& model);

}  // namespace spamlab
