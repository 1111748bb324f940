#include "spamlab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spamlab/error.hpp"
#include "spamlab/rng.hpp"

namespace spamlab {

EigenResult symmetric_eigen(const DenseMatrix& input, const JacobiOptions& opts) {
    const std::size_t n = input.rows();
    if (n == 0) throw DataError("symmetric_eigen: empty matrix");
    if (input.cols() != n) throw DataError("symmetric_eigen: matrix is not square");
    if (!input.all_finite())
        throw DataError("symmetric_eigen: matrix has non-finite entries");
    const double fro = input.frobenius_norm();
    if (input.max_asymmetry() > 1e-8 * std::max(1.0, fro))
        throw DataError("symmetric_eigen: matrix is not symmetric");

    // Exactly symmetrized working copy; the Frobenius norm is invariant under
    // the rotations, so the sweep threshold is fixed up front.
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a.at(i, j) = 0.5 * (input.at(i, j) + input.at(j, i));
    DenseMatrix v = DenseMatrix::identity(n);

    const double threshold = opts.tol * fro;
    bool converged = fro == 0.0 || n == 1;
    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) <= threshold) continue;
                rotated = true;

                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a.at(p, p) = app - t * apq;
                a.at(q, q) = aqq + t * apq;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a.at(i, p);
                    const double aiq = a.at(i, q);
                    a.at(i, p) = aip - s * (aiq + tau * aip);
                    a.at(p, i) = a.at(i, p);
                    a.at(i, q) = aiq + s * (aip - tau * aiq);
                    a.at(q, i) = a.at(i, q);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v.at(i, p);
                    const double viq = v.at(i, q);
                    v.at(i, p) = vip - s * (viq + tau * vip);
                    v.at(i, q) = viq + s * (vip - tau * viq);
                }
            }
        }
        if (!rotated) converged = true;
    }
    if (!converged)
        throw NumericError("symmetric_eigen: no convergence within max_sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a.at(x, x) > a.at(y, y);
    });

    EigenResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        result.eigenvalues[j] = a.at(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i)
            result.eigenvectors.at(i, j) = v.at(i, order[j]);
    }
    return result;
}

namespace {

// Modified Gram-Schmidt over the rows of `basis` (each row is one basis
// vector). Degenerate rows are re-seeded from `rng` so the basis stays full
// rank; two orthogonalization passes keep it stable.
void orthonormalize_rows(DenseMatrix& basis, Rng& rng) {
    const std::size_t b = basis.rows();
    const std::size_t dim = basis.cols();
    for (std::size_t r = 0; r < b; ++r) {
        auto row = basis.row(r);
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t p = 0; p < r; ++p) {
                    const auto prev = basis.row(p);
                    double proj = 0.0;
                    for (std::size_t i = 0; i < dim; ++i) proj += row[i] * prev[i];
                    for (std::size_t i = 0; i < dim; ++i) row[i] -= proj * prev[i];
                }
            }
            double norm_sq = 0.0;
            for (std::size_t i = 0; i < dim; ++i) norm_sq += row[i] * row[i];
            const double norm = std::sqrt(norm_sq);
            if (norm > 1e-12) {
                const double inv = 1.0 / norm;
                for (std::size_t i = 0; i < dim; ++i) row[i] *= inv;
                break;
            }
            if (attempt == 63)
                throw NumericError("subspace_eigen: basis collapse");
            for (std::size_t i = 0; i < dim; ++i) row[i] = rng.normal();
        }
    }
}

}  // namespace

EigenResult subspace_eigen(const SymmetricOp& op, std::size_t dim, std::size_t k,
                           const SubspaceOptions& opts) {
    if (dim == 0) throw DataError("subspace_eigen: empty operator");
    if (k == 0 || k > dim)
        throw DataError("subspace_eigen: need 1 <= k <= dim");

    const std::size_t b = std::min(dim, k + opts.oversample);
    Rng rng(opts.seed);

    // Basis vectors are rows so each one is contiguous for the operator.
    DenseMatrix q(b, dim);
    for (double& x : q.values()) x = rng.normal();
    orthonormalize_rows(q, rng);

    DenseMatrix z(b, dim);
    std::vector<double> prev(k, std::numeric_limits<double>::infinity());
    int stable = 0;
    bool converged = false;

    auto rayleigh_ritz = [&](DenseMatrix& basis) -> EigenResult {
        for (std::size_t r = 0; r < b; ++r) op(basis.row(r), z.row(r));
        DenseMatrix t(b, b);
        for (std::size_t r = 0; r < b; ++r)
            for (std::size_t c = r; c < b; ++c) {
                double acc = 0.0;
                const auto qr = basis.row(r);
                const auto zc = z.row(c);
                for (std::size_t i = 0; i < dim; ++i) acc += qr[i] * zc[i];
                t.at(r, c) = acc;
            }
        for (std::size_t r = 0; r < b; ++r)
            for (std::size_t c = 0; c < r; ++c)
                t.at(r, c) = t.at(c, r) = 0.5 * (t.at(r, c) + t.at(c, r));
        return symmetric_eigen(t);
    };

    for (std::size_t iter = 0; iter < opts.max_iters && !converged; ++iter) {
        EigenResult small = rayleigh_ritz(q);

        // Advance the subspace: rows of the new basis are (Z^T W)^T = W^T Z.
        DenseMatrix y(b, dim, 0.0);
        for (std::size_t j = 0; j < b; ++j) {
            auto yj = y.row(j);
            for (std::size_t a = 0; a < b; ++a) {
                const double w = small.eigenvectors.at(a, j);
                if (w == 0.0) continue;
                const auto za = z.row(a);
                for (std::size_t i = 0; i < dim; ++i) yj[i] += w * za[i];
            }
        }
        q = std::move(y);
        orthonormalize_rows(q, rng);

        double worst = 0.0;
        const double scale = std::max(std::abs(small.eigenvalues[0]), 1e-300);
        for (std::size_t j = 0; j < k; ++j)
            worst = std::max(worst,
                             std::abs(small.eigenvalues[j] - prev[j]) / scale);
        prev.assign(small.eigenvalues.begin(), small.eigenvalues.begin() +
                                                   static_cast<std::ptrdiff_t>(k));
        if (worst < opts.tol) {
            if (++stable >= 2) converged = true;
        } else {
            stable = 0;
        }
    }
    if (!converged)
        throw NumericError("subspace_eigen: no convergence within max_iters");

    // Final Rayleigh-Ritz on the converged basis.
    EigenResult small = rayleigh_ritz(q);
    EigenResult result;
    result.eigenvalues.assign(small.eigenvalues.begin(),
                              small.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k));
    result.eigenvectors = DenseMatrix(dim, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t a = 0; a < b; ++a) {
            const double w = small.eigenvectors.at(a, j);
            if (w == 0.0) continue;
            const auto qa = q.row(a);
            for (std::size_t i = 0; i < dim; ++i)
                result.eigenvectors.at(i, j) += w * qa[i];
        }
    return result;
}

}  // namespace spamlab
