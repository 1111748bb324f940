#include "spamlab/models/decision_tree.hpp"

#include <algorithm>
#include <limits>

namespace spamlab {

namespace {

struct ValueGroup {
    double value = 0.0;
    std::size_t count = 0;
    std::size_t spam = 0;
};

struct BestSplit {
    std::size_t feature = DtNode::npos;
    double threshold = 0.0;
    double weighted = std::numeric_limits<double>::infinity();
};

// 1 - p_spam^2 - p_ham^2, scaled by the node size: m * g = m - (s^2 + h^2)/m.
double gini_times_count(std::size_t spam, std::size_t count) {
    const double s = static_cast<double>(spam);
    const double h = static_cast<double>(count - spam);
    const double m = static_cast<double>(count);
    return m - (s * s + h * h) / m;
}

// Sweep the ordered distinct-value groups of one feature; boundaries fall
// between consecutive groups. Assumes groups cover the whole node.
void sweep_feature(std::size_t feature, const std::vector<ValueGroup>& groups,
                   std::size_t node_count, std::size_t node_spam, BestSplit& best) {
    if (groups.size() < 2) return;
    std::size_t left_count = 0, left_spam = 0;
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        left_count += groups[g].count;
        left_spam += groups[g].spam;
        const std::size_t right_count = node_count - left_count;
        const std::size_t right_spam = node_spam - left_spam;
        const double weighted = (gini_times_count(left_spam, left_count) +
                                 gini_times_count(right_spam, right_count)) /
                                static_cast<double>(node_count);
        if (weighted < best.weighted) {
            double t = 0.5 * (groups[g].value + groups[g + 1].value);
            // guard midpoint rounding: the split must separate the groups
            if (!(t < groups[g + 1].value)) t = groups[g].value;
            best.feature = feature;
            best.threshold = t;
            best.weighted = weighted;
        }
    }
}

}  // namespace

double DtModel::score(const RowView& x) const {
    detail::check_score_dim(dim, x);
    std::size_t at = 0;
    while (!nodes[at].is_leaf()) {
        const DtNode& nd = nodes[at];
        at = row_value(x, nd.feature) <= nd.threshold ? nd.left : nd.right;
    }
    return nodes[at].spam_fraction;
}

DtModel train_dt(const FeatureMatrix& x, std::span<const Label> y,
                 const DtConfig& config) {
    detail::check_training_inputs(x, y);
    if (config.min_samples_split < 2)
        throw ConfigError("train_dt: min_samples_split must be >= 2");

    const std::size_t d = x.cols();
    DtModel model;
    model.dim = d;
    model.config = config;

    struct Work {
        std::size_t node;
        std::vector<std::size_t> rows;
        std::size_t depth;
    };
    std::vector<Work> stack;
    model.nodes.emplace_back();
    {
        std::vector<std::size_t> all(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) all[i] = i;
        stack.push_back({0, std::move(all), 0});
    }

    // scratch: triples (feature, value, spam) of the node's nonzeros
    struct Entry {
        std::size_t feature;
        double value;
        bool spam;
    };
    std::vector<Entry> entries;
    std::vector<ValueGroup> groups;

    while (!stack.empty()) {
        Work work = std::move(stack.back());
        stack.pop_back();
        const std::size_t node_count = work.rows.size();
        std::size_t node_spam = 0;
        for (const std::size_t r : work.rows)
            if (y[r] == Label::spam) ++node_spam;
        model.nodes[work.node].spam_fraction =
            static_cast<double>(node_spam) / static_cast<double>(node_count);

        const bool pure = node_spam == 0 || node_spam == node_count;
        const bool depth_capped =
            config.max_depth != 0 && work.depth >= config.max_depth;
        if (pure || depth_capped || node_count < config.min_samples_split) continue;

        // ----- choose the best split -----
        BestSplit best;
        entries.clear();
        for (const std::size_t r : work.rows) {
            const RowView row = x.row(r);
            const bool spam = y[r] == Label::spam;
            if (row.is_dense()) {
                for (std::size_t i = 0; i < d; ++i)
                    if (row.dense[i] != 0.0) entries.push_back({i, row.dense[i], spam});
            } else {
                for (std::size_t e = 0; e < row.indices.size(); ++e)
                    if (row.values[e] != 0.0)
                        entries.push_back({row.indices[e], row.values[e], spam});
            }
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.feature != b.feature) return a.feature < b.feature;
            return a.value < b.value;
        });

        std::size_t pos = 0;
        while (pos < entries.size()) {
            const std::size_t feature = entries[pos].feature;
            groups.clear();
            std::size_t nnz = 0, nnz_spam = 0;
            bool zero_inserted = false;
            while (pos < entries.size() && entries[pos].feature == feature) {
                const double v = entries[pos].value;
                if (!zero_inserted && v > 0.0) {
                    // implicit zero group sits between negatives and positives
                    groups.push_back({0.0, 0, 0});
                    zero_inserted = true;
                }
                if (groups.empty() || groups.back().value != v)
                    groups.push_back({v, 0, 0});
                while (pos < entries.size() && entries[pos].feature == feature &&
                       entries[pos].value == v) {
                    ++groups.back().count;
                    if (entries[pos].spam) ++groups.back().spam;
                    ++nnz;
                    if (entries[pos].spam) ++nnz_spam;
                    ++pos;
                }
            }
            const std::size_t zeros = node_count - nnz;
            if (zeros > 0) {
                if (!zero_inserted) groups.push_back({0.0, 0, 0});
                for (ValueGroup& g : groups) {
                    if (g.value == 0.0) {
                        g.count = zeros;
                        g.spam = node_spam - nnz_spam;
                        break;
                    }
                }
            } else if (zero_inserted) {
                // zero placeholder with no samples: drop it
                std::erase_if(groups, [](const ValueGroup& g) { return g.count == 0; });
            }
            sweep_feature(feature, groups, node_count, node_spam, best);
        }

        if (best.feature == DtNode::npos) continue;  // constant features: leaf

        std::vector<std::size_t> left_rows, right_rows;
        for (const std::size_t r : work.rows) {
            if (row_value(x.row(r), best.feature) <= best.threshold)
                left_rows.push_back(r);
            else
                right_rows.push_back(r);
        }
        if (left_rows.empty() || right_rows.empty()) continue;  // defensive

        DtNode& nd = model.nodes[work.node];
        nd.feature = best.feature;
        nd.threshold = best.threshold;
        nd.left = model.nodes.size();
        nd.right = model.nodes.size() + 1;
        model.nodes.emplace_back();
        model.nodes.emplace_back();
        stack.push_back({nd.right, std::move(right_rows), work.depth + 1});
        stack.push_back({nd.left, std::move(left_rows), work.depth + 1});
    }
    return model;
}

}  // namespace spamlab
