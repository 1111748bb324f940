#include "spamlab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "spamlab/error.hpp"

namespace spamlab {

std::vector<double> cholesky_solve(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw NumericError("cholesky_solve: shape mismatch");

    // A = L L^T, lower triangle computed in place.
    for (std::size_t j = 0; j < n; ++j) {
        double d = a.at(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= a.at(j, k) * a.at(j, k);
        if (!(d > 0.0) || !std::isfinite(d))
            throw NumericError("cholesky_solve: matrix is not positive definite");
        const double ljj = std::sqrt(d);
        a.at(j, j) = ljj;
        const double inv = 1.0 / ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a.at(i, j);
            const double* ri = a.row(i).data();
            const double* rj = a.row(j).data();
            for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
            a.at(i, j) = s * inv;
        }
    }
    // forward: L y = b
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        const double* ri = a.row(i).data();
        for (std::size_t k = 0; k < i; ++k) s -= ri[k] * b[k];
        b[i] = s / a.at(i, i);
    }
    // backward: L^T x = y
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a.at(k, ii) * b[k];
        b[ii] = s / a.at(ii, ii);
    }
    return b;
}

std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw NumericError("lu_solve: shape mismatch");

    for (std::size_t k = 0; k < n; ++k) {
        // partial pivot
        std::size_t piv = k;
        double best = std::abs(a.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best > 0.0) || !std::isfinite(best))
            throw NumericError("lu_solve: singular matrix");
        if (piv != k) {
            std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(piv).begin());
            std::swap(b[k], b[piv]);
        }
        const double inv = 1.0 / a.at(k, k);
        const double* rk = a.row(k).data();
        for (std::size_t i = k + 1; i < n; ++i) {
            double* ri = a.row(i).data();
            const double lik = ri[k] * inv;
            ri[k] = lik;
            if (lik != 0.0)
                for (std::size_t j = k + 1; j < n; ++j) ri[j] -= lik * rk[j];
        }
    }
    // forward: L y = Pb (unit diagonal)
    for (std::size_t i = 1; i < n; ++i) {
        double s = b[i];
        const double* ri = a.row(i).data();
        for (std::size_t k = 0; k < i; ++k) s -= ri[k] * b[k];
        b[i] = s;
    }
    // backward: U x = y
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        const double* ri = a.row(ii).data();
        for (std::size_t k = ii + 1; k < n; ++k) s -= ri[k] * b[k];
        b[ii] = s / ri[ii];
    }
    return b;
}

}  // namespace spamlab
