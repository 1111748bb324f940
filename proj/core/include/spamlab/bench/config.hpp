#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "spamlab/corpus.hpp"
#include "spamlab/features.hpp"
#include "spamlab/models/decision_tree.hpp"
#include "spamlab/models/knn.hpp"
#include "spamlab/models/lda.hpp"
#include "spamlab/models/naive_bayes.hpp"
#include "spamlab/models/neural_net.hpp"
#include "spamlab/models/svm.hpp"

namespace spamlab {

enum class ClassifierId { nb, knn, svm, lda, dt, dnn };

const char* classifier_id_name(ClassifierId id);       // "nb", "knn", ...
const char* classifier_display_name(ClassifierId id);  // "Naive Bayes", ...
ClassifierId classifier_from_name(std::string_view name);  // throws ConfigError
const char* feature_display_name(FeatureMethod m);     // "Bag-of-Words", "TF-IDF"
FeatureMethod feature_from_name(std::string_view name);    // throws ConfigError

// One pipeline run: load -> preprocess -> split -> featurize (BoW stays
// sparse; TF-IDF is followed by PCA to pca_k dimensions) -> train -> score.
//
// The harness derives variant choices from the feature axis: Naive Bayes is
// multinomial on BoW and gaussian on PCA features (nb.variant is overridden).
// run_experiment uses the seeds exactly as present in this struct; the CLI
// and run_grid populate split.seed, svm.seed and dnn.seed from one seed.
struct ExperimentConfig {
    std::filesystem::path data_path;
    std::optional<std::filesystem::path> stopwords_path;  // builtin when unset
    SplitSpec split;
    FeatureMethod features = FeatureMethod::bow;
    std::size_t pca_k = 10;
    ClassifierId classifier = ClassifierId::nb;

    NbConfig nb;
    KnnConfig knn;
    SvmConfig svm;
    LdaConfig lda;
    DtConfig dt;
    DnnConfig dnn;

    std::optional<double> threshold;  // default: the model's own threshold

    // When set, the fitted vocabulary is dumped here after featurization.
    std::optional<std::filesystem::path> dump_vocab;
};

// Throws ConfigError on out-of-range hyperparameters (those checked before
// data is touched: fraction, pca_k, k, c, epochs, ...).
void validate(const ExperimentConfig& config);

// Sets split.seed, svm.seed and dnn.seed to `seed`.
void apply_seed(ExperimentConfig& config, std::uint64_t seed);

}  // namespace spamlab
