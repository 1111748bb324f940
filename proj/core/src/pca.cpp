#include "spamlab/pca.hpp"

#include <algorithm>
#include <cmath>

#include "spamlab/eigen.hpp"
#include "spamlab/error.hpp"

namespace spamlab {

namespace {

std::vector<double> column_means(const FeatureMatrix& x) {
    std::vector<double> mean(x.cols(), 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const RowView row = x.row(r);
        if (row.is_dense()) {
            for (std::size_t i = 0; i < row.dim; ++i) mean[i] += row.dense[i];
        } else {
            for (std::size_t e = 0; e < row.indices.size(); ++e)
                mean[row.indices[e]] += row.values[e];
        }
    }
    const double inv = 1.0 / static_cast<double>(x.rows());
    for (double& m : mean) m *= inv;
    return mean;
}

// y += s * row
void axpy_row(std::vector<double>& y, double s, const RowView& row) {
    if (s == 0.0) return;
    if (row.is_dense()) {
        for (std::size_t i = 0; i < row.dim; ++i) y[i] += s * row.dense[i];
    } else {
        for (std::size_t e = 0; e < row.indices.size(); ++e)
            y[row.indices[e]] += s * row.values[e];
    }
}

}  // namespace

PcaModel pca_fit(const FeatureMatrix& x, std::size_t k, const PcaOptions& opts) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (n < 2) throw DataError("pca_fit: need at least 2 rows");
    if (d == 0) throw DataError("pca_fit: zero-dimensional input");
    const std::size_t k_max = std::min(n - 1, d);
    if (k == 0 || k > k_max)
        throw ConfigError("pca_fit: k must satisfy 1 <= k <= min(n-1, d) = " +
                          std::to_string(k_max) + ", got " + std::to_string(k));
    for (const double v : x.raw_values())
        if (!std::isfinite(v)) throw DataError("pca_fit: non-finite feature value");

    PcaModel model;
    model.mean = column_means(x);

    // total variance = trace of the covariance = (sum ||x_i||^2 - n ||m||^2) / (n-1)
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double nr = l2_norm(x.row(r));
        sum_sq += nr * nr;
    }
    double mean_sq = 0.0;
    for (const double m : model.mean) mean_sq += m * m;
    const double denom = static_cast<double>(n - 1);
    model.total_variance =
        std::max(0.0, (sum_sq - static_cast<double>(n) * mean_sq) / denom);

    const PcaPath path = opts.path != PcaPath::automatic ? opts.path
                         : (d <= n ? PcaPath::covariance : PcaPath::gram);

    const double rank_tol = std::max(model.total_variance, 1e-300) * 1e-12;
    const std::vector<double>& mean = model.mean;

    std::vector<double> eigenvalues;        // descending
    std::vector<std::vector<double>> dirs;  // unit d-vectors, one per eigenvalue

    if (model.total_variance <= 0.0) {
        // all rows identical: no informative directions at all
        model.rank_deficient = true;
        model.components = DenseMatrix(0, d);
        return model;
    }

    if (path == PcaPath::covariance) {
        auto mul = [&](std::span<const double> vin, std::span<double> yout) {
            std::vector<double> vv(vin.begin(), vin.end());
            double mv = 0.0;
            for (std::size_t i = 0; i < d; ++i) mv += mean[i] * vv[i];
            std::vector<double> y(d, 0.0);
            double tsum = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                const RowView row = x.row(r);
                const double t = dot(row, vv) - mv;
                tsum += t;
                axpy_row(y, t, row);
            }
            for (std::size_t i = 0; i < d; ++i)
                yout[i] = (y[i] - tsum * mean[i]) / denom;
        };

        EigenResult eig;
        if (d <= opts.dense_eigen_limit) {
            DenseMatrix c(d, d, 0.0);
            for (std::size_t r = 0; r < n; ++r) {
                const RowView row = x.row(r);
                if (row.is_dense()) {
                    for (std::size_t i = 0; i < d; ++i) {
                        const double vi = row.dense[i];
                        if (vi == 0.0) continue;
                        for (std::size_t j = 0; j < d; ++j)
                            c.at(i, j) += vi * row.dense[j];
                    }
                } else {
                    for (std::size_t a = 0; a < row.indices.size(); ++a)
                        for (std::size_t b = 0; b < row.indices.size(); ++b)
                            c.at(row.indices[a], row.indices[b]) +=
                                row.values[a] * row.values[b];
                }
            }
            const double nn = static_cast<double>(n);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    c.at(i, j) = (c.at(i, j) - nn * mean[i] * mean[j]) / denom;
            eig = symmetric_eigen(c);
        } else {
            eig = subspace_eigen(mul, d, k);
        }
        const std::size_t avail = std::min<std::size_t>(k, eig.eigenvalues.size());
        for (std::size_t j = 0; j < avail; ++j) {
            if (eig.eigenvalues[j] <= rank_tol) break;
            eigenvalues.push_back(eig.eigenvalues[j]);
            std::vector<double> dir(d);
            for (std::size_t i = 0; i < d; ++i) dir[i] = eig.eigenvectors.at(i, j);
            dirs.push_back(std::move(dir));
        }
    } else {
        // Gram path: eigenvectors u of X_c X_c^T/(n-1) map to directions
        // X_c^T u (same nonzero spectrum as the covariance).
        auto xc_t = [&](std::span<const double> u) {
            std::vector<double> w(d, 0.0);
            double usum = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                axpy_row(w, u[r], x.row(r));
                usum += u[r];
            }
            for (std::size_t i = 0; i < d; ++i) w[i] -= usum * mean[i];
            return w;
        };

        EigenResult eig;
        if (n <= opts.dense_eigen_limit) {
            std::vector<double> dm(n);
            for (std::size_t r = 0; r < n; ++r) dm[r] = dot(x.row(r), mean);
            DenseMatrix g(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i; j < n; ++j) {
                    const double gij =
                        (dot(x.row(i), x.row(j)) - dm[i] - dm[j] + mean_sq) / denom;
                    g.at(i, j) = gij;
                    g.at(j, i) = gij;
                }
            }
            eig = symmetric_eigen(g);
        } else {
            auto mul = [&](std::span<const double> uin, std::span<double> yout) {
                std::vector<double> w = xc_t(uin);
                double mw = 0.0;
                for (std::size_t i = 0; i < d; ++i) mw += mean[i] * w[i];
                for (std::size_t r = 0; r < n; ++r)
                    yout[r] = (dot(x.row(r), w) - mw) / denom;
            };
            eig = subspace_eigen(mul, n, k);
        }
        const std::size_t avail = std::min<std::size_t>(k, eig.eigenvalues.size());
        for (std::size_t j = 0; j < avail; ++j) {
            const double lambda = eig.eigenvalues[j];
            if (lambda <= rank_tol) break;
            std::vector<double> u(n);
            for (std::size_t i = 0; i < n; ++i) u[i] = eig.eigenvectors.at(i, j);
            std::vector<double> dir = xc_t(u);
            double norm_sq = 0.0;
            for (const double v : dir) norm_sq += v * v;
            const double norm = std::sqrt(norm_sq);
            if (!(norm > 0.0)) break;
            for (double& v : dir) v /= norm;
            eigenvalues.push_back(lambda);
            dirs.push_back(std::move(dir));
        }
    }

    model.rank_deficient = eigenvalues.size() < k;
    model.eigenvalues = eigenvalues;
    model.components = DenseMatrix(dirs.size(), d);
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        // sign convention: largest-magnitude coordinate ends up positive
        std::size_t arg = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (std::abs(dirs[j][i]) > std::abs(dirs[j][arg])) arg = i;
        const double flip = dirs[j][arg] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i)
            model.components.at(j, i) = flip * dirs[j][i];
    }
    model.explained_variance_ratio.resize(eigenvalues.size());
    for (std::size_t j = 0; j < eigenvalues.size(); ++j)
        model.explained_variance_ratio[j] = eigenvalues[j] / model.total_variance;
    return model;
}

DenseMatrix pca_transform(const PcaModel& model, const FeatureMatrix& x) {
    if (x.cols() != model.mean.size())
        throw DataError("pca_transform: dimensionality mismatch");
    const std::size_t r = model.n_components();
    std::vector<double> mean_proj(r);
    for (std::size_t j = 0; j < r; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < model.mean.size(); ++i)
            acc += model.mean[i] * model.components.at(j, i);
        mean_proj[j] = acc;
    }
    DenseMatrix z(x.rows(), r);
    for (std::size_t row_i = 0; row_i < x.rows(); ++row_i) {
        const RowView row = x.row(row_i);
        for (std::size_t j = 0; j < r; ++j)
            z.at(row_i, j) = dot(row, model.components.row(j)) - mean_proj[j];
    }
    return z;
}

std::vector<std::pair<std::size_t, double>> scree_data(const PcaModel& model) {
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(model.explained_variance_ratio.size());
    for (std::size_t j = 0; j < model.explained_variance_ratio.size(); ++j)
        out.emplace_back(j + 1, model.explained_variance_ratio[j]);
    return out;
}

}  // namespace spamlab
