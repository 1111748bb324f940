#pragma once

#include <vector>

#include "spamlab/models/model.hpp"

namespace spamlab {

enum class NbVariant { multinomial, gaussian };

struct NbConfig {
    NbVariant variant = NbVariant::multinomial;
    double alpha = 1.0;       // Laplace smoothing (multinomial); must be > 0
    double var_floor = 1e-9;  // per-feature variance floor (gaussian); must be > 0
};

// Naive Bayes. The multinomial variant requires non-negative features
// (counts); the gaussian variant fits per-class/per-feature means and
// floored MLE variances. score() is the posterior P(spam | x), computed in
// the log domain with log-sum-exp normalization.
struct NbModel final : Model {
    NbVariant variant = NbVariant::multinomial;
    double alpha = 1.0;
    double var_floor = 1e-9;
    std::size_t dim = 0;
    double log_prior_ham = 0.0;
    double log_prior_spam = 0.0;
    // multinomial: log P(term | class), length dim
    std::vector<double> log_cond_ham;
    std::vector<double> log_cond_spam;
    // gaussian: per-feature statistics, length dim
    std::vector<double> mean_ham, mean_spam;
    std::vector<double> var_ham, var_spam;

    ModelKind kind() const override { return ModelKind::nb; }
    std::size_t input_dim() const override { return dim; }
    double score(const RowView& x) const override;
    double default_threshold() const override { return 0.5; }
};

NbModel train_nb(const FeatureMatrix& x, std::span<const Label> y,
                 const NbConfig& config = {});

}  // namespace spamlab
