#include "spamlab/models/knn.hpp"

#include <algorithm>
#include <cmath>

namespace spamlab {

double KnnModel::score(const RowView& x) const {
    detail::check_score_dim(train_x.cols(), x);
    const std::size_t n = train_x.rows();
    const double x_norm = l2_norm(x);

    // (similarity, training index); partial sort keeps the top k with ties
    // broken towards the lower index.
    std::vector<std::pair<double, std::size_t>> sims;
    sims.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sim = 0.0;
        if (x_norm > 0.0 && train_norms[i] > 0.0)
            sim = dot(x, train_x.row(i)) / (x_norm * train_norms[i]);
        sims.emplace_back(sim, i);
    }
    const std::size_t kk = std::min(k, n);
    std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(kk),
                      sims.end(), [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second < b.second;
                      });

    double total = 0.0, spam = 0.0;
    for (std::size_t j = 0; j < kk; ++j) {
        const double w = std::max(sims[j].first, 0.0);
        total += w;
        if (train_y[sims[j].second] == Label::spam) spam += w;
    }
    return total > 0.0 ? spam / total : 0.0;
}

KnnModel train_knn(const FeatureMatrix& x, std::span<const Label> y,
                   const KnnConfig& config) {
    detail::check_training_inputs(x, y);
    if (config.k == 0 || config.k > x.rows())
        throw ConfigError("train_knn: k must satisfy 1 <= k <= training size");
    KnnModel model;
    model.k = config.k;
    model.train_x = x;
    model.train_y.assign(y.begin(), y.end());
    model.train_norms.resize(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        model.train_norms[i] = l2_norm(x.row(i));
    return model;
}

}  // namespace spamlab
