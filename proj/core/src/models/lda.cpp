#include "spamlab/models/lda.hpp"

#include <algorithm>
#include <cmath>

#include "spamlab/dense_matrix.hpp"
#include "spamlab/linalg.hpp"

namespace spamlab {

namespace {

double log_sum_exp(double a, double b) {
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void add_row(std::vector<double>& acc, double s, const RowView& row) {
    if (row.is_dense()) {
        for (std::size_t i = 0; i < row.dim; ++i) acc[i] += s * row.dense[i];
    } else {
        for (std::size_t e = 0; e < row.indices.size(); ++e)
            acc[row.indices[e]] += s * row.values[e];
    }
}

}  // namespace

double LdaModel::score(const RowView& x) const {
    detail::check_score_dim(w.size(), x);
    const double z = dot(x, w);
    const double ds = z - mean_spam_z;
    const double dh = z - mean_ham_z;
    // the shared -0.5*log(2*pi*var) term cancels in the posterior
    const double ls = log_prior_spam - ds * ds / (2.0 * var_z);
    const double lh = log_prior_ham - dh * dh / (2.0 * var_z);
    return std::exp(ls - log_sum_exp(ls, lh));
}

LdaModel train_lda(const FeatureMatrix& x, std::span<const Label> y,
                   const LdaConfig& config) {
    detail::check_training_inputs(x, y);
    if (!(config.ridge_scale > 0.0))
        throw ConfigError("train_lda: ridge_scale must be > 0");

    const std::size_t n = x.rows();
    const std::size_t d = x.cols();

    std::size_t n_spam = 0;
    for (const Label l : y)
        if (l == Label::spam) ++n_spam;
    const std::size_t n_ham = n - n_spam;

    std::vector<double> mu_spam(d, 0.0), mu_ham(d, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        add_row(y[r] == Label::spam ? mu_spam : mu_ham, 1.0, x.row(r));
    for (std::size_t i = 0; i < d; ++i) {
        mu_spam[i] /= static_cast<double>(n_spam);
        mu_ham[i] /= static_cast<double>(n_ham);
    }

    double sum_sq = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double nr = l2_norm(x.row(r));
        sum_sq += nr * nr;
    }
    double mu_s_sq = 0.0, mu_h_sq = 0.0;
    for (const double v : mu_spam) mu_s_sq += v * v;
    for (const double v : mu_ham) mu_h_sq += v * v;
    const double trace_sw =
        std::max(0.0, sum_sq - static_cast<double>(n_spam) * mu_s_sq -
                          static_cast<double>(n_ham) * mu_h_sq);
    const double eps =
        config.ridge_scale *
        (trace_sw > 0.0 ? trace_sw / static_cast<double>(d) : 1.0);

    std::vector<double> delta(d);
    double delta_norm_sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        delta[i] = mu_spam[i] - mu_ham[i];
        delta_norm_sq += delta[i] * delta[i];
    }
    if (!(delta_norm_sq > 0.0))
        throw NumericError("train_lda: class means coincide");

    const LdaPath path = config.path != LdaPath::automatic
                             ? config.path
                             : (d <= n ? LdaPath::primal : LdaPath::dual);

    std::vector<double> w;
    if (path == LdaPath::primal) {
        // S_W = sum_i x_i x_i^T - sum_c N_c mu_c mu_c^T, then + eps I.
        DenseMatrix s(d, d, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            const RowView row = x.row(r);
            if (row.is_dense()) {
                for (std::size_t i = 0; i < d; ++i) {
                    const double vi = row.dense[i];
                    if (vi == 0.0) continue;
                    double* si = s.row(i).data();
                    for (std::size_t j = 0; j < d; ++j) si[j] += vi * row.dense[j];
                }
            } else {
                for (std::size_t a = 0; a < row.indices.size(); ++a) {
                    double* si = s.row(row.indices[a]).data();
                    for (std::size_t b = 0; b < row.indices.size(); ++b)
                        si[row.indices[b]] += row.values[a] * row.values[b];
                }
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            double* si = s.row(i).data();
            for (std::size_t j = 0; j < d; ++j)
                si[j] -= static_cast<double>(n_spam) * mu_spam[i] * mu_spam[j] +
                         static_cast<double>(n_ham) * mu_ham[i] * mu_ham[j];
            si[i] += eps;
        }
        w = cholesky_solve(std::move(s), delta);
    } else {
        // Dual: solve (H K + eps I) a = r with K = X X^T and H the per-class
        // centering blocks; then w = X^T a. Exact: substituting w = X^T a
        // into (X^T H X + eps I) w = X^T r reduces to the system above.
        DenseMatrix k(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const RowView ri = x.row(i);
            for (std::size_t j = i; j < n; ++j) {
                const double v = dot(ri, x.row(j));
                k.at(i, j) = v;
                k.at(j, i) = v;
            }
        }
        std::vector<double> avg_spam(n, 0.0), avg_ham(n, 0.0);
        for (std::size_t l = 0; l < n; ++l) {
            const double* kl = k.row(l).data();
            std::vector<double>& acc = y[l] == Label::spam ? avg_spam : avg_ham;
            for (std::size_t j = 0; j < n; ++j) acc[j] += kl[j];
        }
        for (std::size_t j = 0; j < n; ++j) {
            avg_spam[j] /= static_cast<double>(n_spam);
            avg_ham[j] /= static_cast<double>(n_ham);
        }
        // transform K in place into H K + eps I
        for (std::size_t i = 0; i < n; ++i) {
            double* ki = k.row(i).data();
            const std::vector<double>& avg =
                y[i] == Label::spam ? avg_spam : avg_ham;
            for (std::size_t j = 0; j < n; ++j) ki[j] -= avg[j];
            ki[i] += eps;
        }
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i)
            r[i] = y[i] == Label::spam ? 1.0 / static_cast<double>(n_spam)
                                       : -1.0 / static_cast<double>(n_ham);
        const std::vector<double> a = lu_solve(std::move(k), std::move(r));
        w.assign(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) add_row(w, a[i], x.row(i));
    }

    double w_norm_sq = 0.0;
    for (const double v : w) {
        if (!std::isfinite(v))
            throw NumericError("train_lda: non-finite discriminant direction");
        w_norm_sq += v * v;
    }
    if (!(w_norm_sq > 0.0))
        throw NumericError("train_lda: degenerate discriminant direction");
    const double inv = 1.0 / std::sqrt(w_norm_sq);
    for (double& v : w) v *= inv;

    LdaModel model;
    model.w = std::move(w);
    double mz_spam = 0.0, mz_ham = 0.0;
    std::vector<double> z(n);
    for (std::size_t r = 0; r < n; ++r) {
        z[r] = dot(x.row(r), model.w);
        (y[r] == Label::spam ? mz_spam : mz_ham) += z[r];
    }
    mz_spam /= static_cast<double>(n_spam);
    mz_ham /= static_cast<double>(n_ham);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double diff = z[r] - (y[r] == Label::spam ? mz_spam : mz_ham);
        ss += diff * diff;
    }
    const double gap = mz_spam - mz_ham;
    double var = n > 2 ? ss / static_cast<double>(n - 2) : 0.0;
    var = std::max(var, 1e-12 * (1.0 + gap * gap));  // keep strictly positive
    model.mean_spam_z = mz_spam;
    model.mean_ham_z = mz_ham;
    model.var_z = var;
    model.log_prior_spam =
        std::log(static_cast<double>(n_spam) / static_cast<double>(n));
    model.log_prior_ham =
        std::log(static_cast<double>(n_ham) / static_cast<double>(n));
    return model;
}

}  // namespace spamlab
