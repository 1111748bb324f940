#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spamlab/bench/config.hpp"
#include "spamlab/metrics.hpp"

namespace spamlab {

struct RunReport {
    ExperimentConfig config;
    std::uint64_t seed = 0;  // config.split.seed echo

    std::size_t corpus_size = 0, corpus_ham = 0, corpus_spam = 0;
    std::size_t train_size = 0, train_ham = 0, train_spam = 0;
    std::size_t test_size = 0, test_ham = 0, test_spam = 0;
    std::size_t vocab_size = 0;
    std::size_t feature_dim = 0;  // after PCA for tfidf runs
    bool degenerate_split = false;
    bool pca_rank_deficient = false;
    bool svm_converged = true;  // meaningful for the svm classifier only
    double threshold = 0.0;     // the decision threshold actually used

    ConfusionMatrix cm;
    ClassMetrics metrics;
    RocCurve roc;
    std::vector<double> scree;  // explained variance ratios (tfidf runs)
    double wall_seconds = 0.0;
};

// Runs the full pipeline for one configuration. Errors from the underlying
// modules propagate with the pipeline stage prepended to the message
// ("[featurize] ...") and their type preserved.
RunReport run_experiment(const ExperimentConfig& config);

struct GridCell {
    ClassifierId classifier = ClassifierId::nb;
    FeatureMethod features = FeatureMethod::bow;
    std::uint64_t seed = 0;
    std::optional<RunReport> report;  // engaged on success
    std::string error;                // non-empty on failure
};

// All six classifiers x {bow, tfidf}, in fixed row order (nb, knn, svm, lda,
// dt, dnn) x (bow, tfidf). Cell i runs with seed = base seed + i; a failing
// cell records its error and the grid continues. Cells share no mutable
// state (each re-derives its split and features), so results are
// order-independent.
struct GridReport {
    ExperimentConfig base;
    std::vector<GridCell> cells;
    double wall_seconds = 0.0;
};

GridReport run_grid(const ExperimentConfig& base);

}  // namespace spamlab
