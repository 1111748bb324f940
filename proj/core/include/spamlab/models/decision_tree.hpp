#pragma once

#include <vector>

#include "spamlab/models/model.hpp"

namespace spamlab {

struct DtConfig {
    std::size_t max_depth = 20;        // 0 means unlimited
    std::size_t min_samples_split = 2; // nodes smaller than this become leaves
};

struct DtNode {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t feature = npos;  // npos marks a leaf
    double threshold = 0.0;      // x[feature] <= threshold goes left
    std::size_t left = 0;
    std::size_t right = 0;
    double spam_fraction = 0.0;  // training spam fraction at this node

    bool is_leaf() const { return feature == npos; }
};

// Greedy CART with Gini impurity. Candidate thresholds are midpoints of
// consecutive distinct feature values within the node; the best split
// minimizes the weighted child impurity with ties broken towards the lowest
// feature index, then the lowest threshold. An impure node splits as long as
// any valid split exists, even at zero immediate gain (needed for
// XOR-like data where the payoff comes a level deeper); recursion stops at
// purity, depth, or min_samples_split. score() is the leaf spam fraction.
struct DtModel final : Model {
    std::vector<DtNode> nodes;  // nodes[0] is the root
    std::size_t dim = 0;
    DtConfig config;

    ModelKind kind() const override { return ModelKind::dt; }
    std::size_t input_dim() const override { return dim; }
    double score(const RowView& x) const override;
    double default_threshold() const override { return 0.5; }
};

DtModel train_dt(const FeatureMatrix& x, std::span<const Label> y,
                 const DtConfig& config = {});

}  // namespace spamlab
