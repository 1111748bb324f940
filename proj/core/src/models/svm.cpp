#include "spamlab/models/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spamlab/rng.hpp"

namespace spamlab {

double SvmModel::score(const RowView& x) const {
    detail::check_score_dim(w.size(), x);
    return dot(x, w) + bias;
}

SvmModel train_svm(const FeatureMatrix& x, std::span<const Label> y,
                   const SvmConfig& config) {
    detail::check_training_inputs(x, y);
    if (!(config.c > 0.0)) throw ConfigError("train_svm: c must be > 0");
    if (!(config.tol > 0.0)) throw ConfigError("train_svm: tol must be > 0");
    if (config.max_epochs == 0)
        throw ConfigError("train_svm: max_epochs must be >= 1");

    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const double c = config.c;

    std::vector<double> ysign(n);
    for (std::size_t i = 0; i < n; ++i)
        ysign[i] = y[i] == Label::spam ? 1.0 : -1.0;

    // Q_ii for the augmented representation (bias feature == 1).
    std::vector<double> qd(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double nr = l2_norm(x.row(i));
        qd[i] = nr * nr + 1.0;
    }

    std::vector<double> alpha(n, 0.0);
    std::vector<double> w(d + 1, 0.0);  // w[d] is the bias coordinate
    Rng rng(config.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    auto dual_objective = [&] {
        double wsq = 0.0;
        for (const double v : w) wsq += v * v;
        double asum = 0.0;
        for (const double a : alpha) asum += a;
        return asum - 0.5 * wsq;
    };

    SvmModel model;
    model.c = c;
    std::size_t epoch = 0;
    for (; epoch < config.max_epochs; ++epoch) {
        rng.shuffle(order);
        double worst_violation = 0.0;
        for (const std::size_t i : order) {
            const RowView row = x.row(i);
            const double g = ysign[i] * (dot(row, w) + w[d]) - 1.0;

            double pg = g;  // projected gradient at the box boundary
            if (alpha[i] <= 0.0)
                pg = std::min(g, 0.0);
            else if (alpha[i] >= c)
                pg = std::max(g, 0.0);
            worst_violation = std::max(worst_violation, std::abs(pg));

            if (std::abs(pg) > 1e-12) {
                const double old = alpha[i];
                alpha[i] = std::min(std::max(old - g / qd[i], 0.0), c);
                const double delta = (alpha[i] - old) * ysign[i];
                if (delta != 0.0) {
                    if (row.is_dense()) {
                        for (std::size_t j = 0; j < d; ++j)
                            w[j] += delta * row.dense[j];
                    } else {
                        for (std::size_t e = 0; e < row.indices.size(); ++e)
                            w[row.indices[e]] += delta * row.values[e];
                    }
                    w[d] += delta;
                }
            }
        }
        if (config.objective_trace) config.objective_trace->push_back(dual_objective());
        if (worst_violation < config.tol) {
            model.converged = true;
            ++epoch;
            break;
        }
    }
    model.epochs_run = epoch;
    model.dual_objective = dual_objective();

    double hinge = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        hinge += std::max(0.0, 1.0 - ysign[i] * (dot(x.row(i), w) + w[d]));
    double wsq = 0.0;
    for (const double v : w) wsq += v * v;
    model.primal_objective = 0.5 * wsq + c * hinge;

    model.bias = w[d];
    w.pop_back();
    model.w = std::move(w);
    return model;
}

}  // namespace spamlab
