#pragma once

#include <span>

#include "spamlab/corpus.hpp"
#include "spamlab/error.hpp"
#include "spamlab/features.hpp"

namespace spamlab {

enum class ModelKind { nb, knn, svm, lda, dt, dnn };

const char* model_kind_name(ModelKind kind);  // "nb", "knn", ...

// Common scoring interface. score(x) is a spam score that is higher for
// more spam-like inputs and finite for every finite input; predict compares
// it against a threshold (>= means spam). Probability-like models use 0.5
// as the default threshold, margin models use 0.
class Model {
public:
    virtual ~Model() = default;

    virtual ModelKind kind() const = 0;
    virtual std::size_t input_dim() const = 0;
    virtual double score(const RowView& x) const = 0;
    virtual double default_threshold() const = 0;

    bool predict(const RowView& x, double threshold) const {
        return score(x) >= threshold;
    }
    bool predict(const RowView& x) const { return predict(x, default_threshold()); }
};

namespace detail {

// Shared trainer preconditions: non-empty, consistent sizes, finite values,
// both classes present.
void check_training_inputs(const FeatureMatrix& x, std::span<const Label> y);

inline void check_score_dim(std::size_t model_dim, const RowView& x) {
    if (x.dim != model_dim)
        throw DataError("score: input has dimension " + std::to_string(x.dim) +
                        ", model expects " + std::to_string(model_dim));
}

}  // namespace detail

}  // namespace spamlab
