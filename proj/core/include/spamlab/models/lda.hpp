#pragma once

#include <vector>

#include "spamlab/models/model.hpp"

namespace spamlab {

enum class LdaPath {
    automatic,  // primal (d x d) when d <= n, dual (n x n) otherwise
    primal,
    dual,
};

struct LdaConfig {
    // Ridge applied to the within-class scatter: eps = ridge_scale *
    // trace(S_W) / d (falls back to ridge_scale itself if the trace is 0).
    double ridge_scale = 1e-6;
    LdaPath path = LdaPath::automatic;
};

// Fisher discriminant for two classes: w solves (S_W + eps I) w = mu_spam -
// mu_ham and is normalized to unit length. Scoring projects onto w and
// applies a shared-variance 1-D Gaussian posterior with the training priors.
// When d > n the solve uses the exact dual (n x n) formulation.
struct LdaModel final : Model {
    std::vector<double> w;  // unit discriminant direction
    double mean_spam_z = 0.0;
    double mean_ham_z = 0.0;
    double var_z = 1.0;  // pooled projected variance, strictly positive
    double log_prior_spam = 0.0;
    double log_prior_ham = 0.0;

    ModelKind kind() const override { return ModelKind::lda; }
    std::size_t input_dim() const override { return w.size(); }
    double score(const RowView& x) const override;
    double default_threshold() const override { return 0.5; }
};

LdaModel train_lda(const FeatureMatrix& x, std::span<const Label> y,
                   const LdaConfig& config = {});

}  // namespace spamlab
