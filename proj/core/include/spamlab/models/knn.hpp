#pragma once

#include <vector>

#include "spamlab/models/model.hpp"

namespace spamlab {

struct KnnConfig {
    std::size_t k = 5;  // 1 <= k <= training size
};

// k-nearest-neighbour classifier over cosine similarity. The k most similar
// training rows (ties broken towards the lower training index) vote with
// weight max(similarity, 0); score = spam weight / total weight, or 0 when
// the total weight vanishes. Rows with zero norm have similarity 0 to
// everything.
struct KnnModel final : Model {
    std::size_t k = 5;
    FeatureMatrix train_x;
    std::vector<Label> train_y;
    std::vector<double> train_norms;  // cached L2 norms of training rows

    ModelKind kind() const override { return ModelKind::knn; }
    std::size_t input_dim() const override { return train_x.cols(); }
    double score(const RowView& x) const override;
    double default_threshold() const override { return 0.5; }
};

KnnModel train_knn(const FeatureMatrix& x, std::span<const Label> y,
                   const KnnConfig& config = {});

}  // namespace spamlab
