#include "spamlab/models/naive_bayes.hpp"

#include <algorithm>
#include <cmath>

namespace spamlab {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

double log_sum_exp(double a, double b) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

double NbModel::score(const RowView& x) const {
    detail::check_score_dim(dim, x);
    double ls = log_prior_spam;
    double lh = log_prior_ham;
    if (variant == NbVariant::multinomial) {
        auto accumulate = [&](std::size_t term, double count) {
            ls += count * log_cond_spam[term];
            lh += count * log_cond_ham[term];
        };
        if (x.is_dense()) {
            for (std::size_t i = 0; i < x.dim; ++i)
                if (x.dense[i] != 0.0) accumulate(i, x.dense[i]);
        } else {
            for (std::size_t e = 0; e < x.indices.size(); ++e)
                accumulate(x.indices[e], x.values[e]);
        }
    } else {
        auto accumulate = [&](std::size_t i, double v) {
            const double ds = v - mean_spam[i];
            const double dh = v - mean_ham[i];
            ls -= 0.5 * (kLogTwoPi + std::log(var_spam[i]) + ds * ds / var_spam[i]);
            lh -= 0.5 * (kLogTwoPi + std::log(var_ham[i]) + dh * dh / var_ham[i]);
        };
        if (x.is_dense()) {
            for (std::size_t i = 0; i < x.dim; ++i) accumulate(i, x.dense[i]);
        } else {
            // zeros still contribute to the gaussian likelihood
            std::size_t e = 0;
            for (std::size_t i = 0; i < x.dim; ++i) {
                double v = 0.0;
                if (e < x.indices.size() && x.indices[e] == i) v = x.values[e++];
                accumulate(i, v);
            }
        }
    }
    return std::exp(ls - log_sum_exp(ls, lh));
}

NbModel train_nb(const FeatureMatrix& x, std::span<const Label> y,
                 const NbConfig& config) {
    detail::check_training_inputs(x, y);

    NbModel model;
    model.variant = config.variant;
    model.alpha = config.alpha;
    model.var_floor = config.var_floor;
    model.dim = x.cols();

    const std::size_t n = x.rows();
    std::size_t n_spam = 0;
    for (const Label l : y)
        if (l == Label::spam) ++n_spam;
    const std::size_t n_ham = n - n_spam;
    model.log_prior_spam = std::log(static_cast<double>(n_spam) / static_cast<double>(n));
    model.log_prior_ham = std::log(static_cast<double>(n_ham) / static_cast<double>(n));

    const std::size_t d = x.cols();
    if (config.variant == NbVariant::multinomial) {
        if (!(config.alpha > 0.0))
            throw ConfigError("train_nb: alpha must be > 0");
        std::vector<double> total_spam(d, 0.0), total_ham(d, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            const RowView row = x.row(r);
            std::vector<double>& acc = y[r] == Label::spam ? total_spam : total_ham;
            if (row.is_dense()) {
                for (std::size_t i = 0; i < d; ++i) {
                    if (row.dense[i] < 0.0)
                        throw DataError("train_nb: negative feature for multinomial");
                    acc[i] += row.dense[i];
                }
            } else {
                for (std::size_t e = 0; e < row.indices.size(); ++e) {
                    if (row.values[e] < 0.0)
                        throw DataError("train_nb: negative feature for multinomial");
                    acc[row.indices[e]] += row.values[e];
                }
            }
        }
        const double v = static_cast<double>(d);
        double sum_spam = 0.0, sum_ham = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            sum_spam += total_spam[i];
            sum_ham += total_ham[i];
        }
        model.log_cond_spam.resize(d);
        model.log_cond_ham.resize(d);
        const double den_spam = std::log(sum_spam + config.alpha * v);
        const double den_ham = std::log(sum_ham + config.alpha * v);
        for (std::size_t i = 0; i < d; ++i) {
            model.log_cond_spam[i] = std::log(total_spam[i] + config.alpha) - den_spam;
            model.log_cond_ham[i] = std::log(total_ham[i] + config.alpha) - den_ham;
        }
    } else {
        if (!(config.var_floor > 0.0))
            throw ConfigError("train_nb: var_floor must be > 0");
        model.mean_spam.assign(d, 0.0);
        model.mean_ham.assign(d, 0.0);
        model.var_spam.assign(d, 0.0);
        model.var_ham.assign(d, 0.0);
        auto accumulate_row = [&](const RowView& row, std::vector<double>& acc) {
            if (row.is_dense()) {
                for (std::size_t i = 0; i < d; ++i) acc[i] += row.dense[i];
            } else {
                for (std::size_t e = 0; e < row.indices.size(); ++e)
                    acc[row.indices[e]] += row.values[e];
            }
        };
        for (std::size_t r = 0; r < n; ++r)
            accumulate_row(x.row(r),
                           y[r] == Label::spam ? model.mean_spam : model.mean_ham);
        for (std::size_t i = 0; i < d; ++i) {
            model.mean_spam[i] /= static_cast<double>(n_spam);
            model.mean_ham[i] /= static_cast<double>(n_ham);
        }
        // second pass: MLE variance around the class mean (zeros included)
        for (std::size_t r = 0; r < n; ++r) {
            const RowView row = x.row(r);
            const bool spam = y[r] == Label::spam;
            std::vector<double>& var = spam ? model.var_spam : model.var_ham;
            const std::vector<double>& mean = spam ? model.mean_spam : model.mean_ham;
            std::size_t e = 0;
            for (std::size_t i = 0; i < d; ++i) {
                double v = 0.0;
                if (!row.is_dense()) {
                    if (e < row.indices.size() && row.indices[e] == i)
                        v = row.values[e++];
                } else {
                    v = row.dense[i];
                }
                const double diff = v - mean[i];
                var[i] += diff * diff;
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            model.var_spam[i] =
                std::max(model.var_spam[i] / static_cast<double>(n_spam),
                         config.var_floor);
            model.var_ham[i] = std::max(
                model.var_ham[i] / static_cast<double>(n_ham), config.var_floor);
        }
    }
    return model;
}

}  // namespace spamlab
