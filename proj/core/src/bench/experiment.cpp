#include "spamlab/bench/experiment.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <utility>

#include "spamlab/error.hpp"
#include "spamlab/models/decision_tree.hpp"
#include "spamlab/models/knn.hpp"
#include "spamlab/models/lda.hpp"
#include "spamlab/models/model.hpp"
#include "spamlab/models/naive_bayes.hpp"
#include "spamlab/models/neural_net.hpp"
#include "spamlab/models/svm.hpp"
#include "spamlab/pca.hpp"
#include "spamlab/textprep.hpp"

namespace spamlab {

const char* classifier_id_name(ClassifierId id) {
    switch (id) {
        case ClassifierId::nb: return "nb";
        case ClassifierId::knn: return "knn";
        case ClassifierId::svm: return "svm";
        case ClassifierId::lda: return "lda";
        case ClassifierId::dt: return "dt";
        case ClassifierId::dnn: return "dnn";
    }
    return "unknown";
}

const char* classifier_display_name(ClassifierId id) {
    switch (id) {
        case ClassifierId::nb: return "Naive Bayes";
        case ClassifierId::knn: return "K-Nearest Neighbors";
        case ClassifierId::svm: return "Support Vector Machine";
        case ClassifierId::lda: return "Linear Discriminant Analysis";
        case ClassifierId::dt: return "Decision Tree";
        case ClassifierId::dnn: return "Deep Neural Network";
    }
    return "unknown";
}

ClassifierId classifier_from_name(std::string_view name) {
    if (name == "nb") return ClassifierId::nb;
    if (name == "knn") return ClassifierId::knn;
    if (name == "svm") return ClassifierId::svm;
    if (name == "lda") return ClassifierId::lda;
    if (name == "dt") return ClassifierId::dt;
    if (name == "dnn") return ClassifierId::dnn;
    throw ConfigError("unknown classifier '" + std::string(name) +
                      "' (expected nb|knn|svm|lda|dt|dnn)");
}

const char* feature_display_name(FeatureMethod m) {
    return m == FeatureMethod::bow ? "Bag-of-Words" : "TF-IDF";
}

FeatureMethod feature_from_name(std::string_view name) {
    if (name == "bow") return FeatureMethod::bow;
    if (name == "tfidf") return FeatureMethod::tfidf;
    throw ConfigError("unknown feature method '" + std::string(name) +
                      "' (expected bow|tfidf)");
}

void validate(const ExperimentConfig& c) {
    if (c.data_path.empty()) throw ConfigError("data path must not be empty");
    if (!(c.split.train_fraction > 0.0) || !(c.split.train_fraction < 1.0))
        throw ConfigError("train_fraction must lie strictly in (0, 1)");
    if (c.pca_k == 0) throw ConfigError("pca_k must be >= 1");
    if (!(c.nb.alpha > 0.0)) throw ConfigError("nb alpha must be > 0");
    if (!(c.nb.var_floor > 0.0)) throw ConfigError("nb var_floor must be > 0");
    if (c.knn.k == 0) throw ConfigError("knn k must be >= 1");
    if (!(c.svm.c > 0.0)) throw ConfigError("svm c must be > 0");
    if (!(c.svm.tol > 0.0)) throw ConfigError("svm tol must be > 0");
    if (c.svm.max_epochs == 0) throw ConfigError("svm max_epochs must be >= 1");
    if (!(c.lda.ridge_scale > 0.0)) throw ConfigError("lda ridge_scale must be > 0");
    if (c.dt.min_samples_split < 2)
        throw ConfigError("dt min_samples_split must be >= 2");
    if (!(c.dnn.learning_rate > 0.0)) throw ConfigError("dnn learning_rate must be > 0");
    if (!(c.dnn.momentum >= 0.0 && c.dnn.momentum < 1.0))
        throw ConfigError("dnn momentum must lie in [0, 1)");
    if (!(c.dnn.dropout >= 0.0 && c.dnn.dropout < 1.0))
        throw ConfigError("dnn dropout must lie in [0, 1)");
    if (c.dnn.batch_size == 0) throw ConfigError("dnn batch_size must be >= 1");
    if (c.dnn.epochs == 0) throw ConfigError("dnn epochs must be >= 1");
    for (const std::size_t h : c.dnn.hidden)
        if (h == 0) throw ConfigError("dnn hidden layer of width 0");
    // No range check: thresholds are margin-scale for SVM, so any finite
    // value can be meaningful.
    if (c.threshold && !std::isfinite(*c.threshold))
        throw ConfigError("threshold override must be finite");
}

void apply_seed(ExperimentConfig& config, std::uint64_t seed) {
    config.split.seed = seed;
    config.svm.seed = seed;
    config.dnn.seed = seed;
}

namespace {

// Re-throws module errors with the pipeline stage attached, keeping the type.
template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    auto tag = [&](const Error& e) { return "[" + std::string(name) + "] " + e.what(); };
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError(tag(e));
    } catch (const IoError& e) {
        throw IoError(tag(e));
    } catch (const NumericError& e) {
        throw NumericError(tag(e));
    } catch (const DataError& e) {
        throw DataError(tag(e));
    }
}

// Corpus loading and preprocessing depend only on the data file and stopword
// list, so a grid shares one Prepared across all twelve cells.
struct Prepared {
    Corpus corpus;
    std::vector<TokenizedDoc> docs;
};

Prepared prepare(const ExperimentConfig& config) {
    Prepared prep;
    prep.corpus = stage("load", [&] { return load_csv(config.data_path); });
    const StopwordList custom = stage("stopwords", [&] {
        return config.stopwords_path ? StopwordList::from_file(*config.stopwords_path)
                                     : StopwordList();
    });
    const StopwordList& stopwords =
        config.stopwords_path ? custom : StopwordList::builtin();
    stage("preprocess", [&] {
        prep.docs.reserve(prep.corpus.messages.size());
        for (const RawMessage& msg : prep.corpus.messages)
            prep.docs.push_back(preprocess(msg.text, stopwords));
        return 0;
    });
    return prep;
}

FeatureMatrix dense_from(DenseMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    return FeatureMatrix::dense(rows, cols, std::move(m.values()));
}

RunReport run_prepared(const ExperimentConfig& config, const Prepared& prep) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.config = config;
    rep.seed = config.split.seed;
    rep.corpus_size = prep.corpus.messages.size();
    rep.corpus_ham = prep.corpus.n_ham;
    rep.corpus_spam = prep.corpus.n_spam;

    const DataSplit split =
        stage("split", [&] { return stratified_split(prep.corpus, config.split); });
    rep.degenerate_split = split.degenerate;

    std::vector<TokenizedDoc> train_docs, test_docs;
    std::vector<Label> train_y, test_y;
    train_docs.reserve(split.train_indices.size());
    test_docs.reserve(split.test_indices.size());
    for (const std::size_t i : split.train_indices) {
        train_docs.push_back(prep.docs[i]);
        train_y.push_back(prep.corpus.messages[i].label);
    }
    for (const std::size_t i : split.test_indices) {
        test_docs.push_back(prep.docs[i]);
        test_y.push_back(prep.corpus.messages[i].label);
    }
    rep.train_size = train_y.size();
    rep.test_size = test_y.size();
    for (const Label l : train_y) (l == Label::spam ? rep.train_spam : rep.train_ham)++;
    for (const Label l : test_y) (l == Label::spam ? rep.test_spam : rep.test_ham)++;

    FeaturizedSplit feats = stage("featurize", [&] {
        return featurize_split(train_docs, test_docs, config.features);
    });
    rep.vocab_size = feats.vocab.size();
    if (config.dump_vocab)
        stage("featurize", [&] {
            dump_vocabulary(feats.vocab, *config.dump_vocab);
            return 0;
        });
    FeatureMatrix train_x = std::move(feats.train);
    FeatureMatrix test_x = std::move(feats.test);

    if (config.features == FeatureMethod::tfidf) {
        const PcaModel pca =
            stage("pca", [&] { return pca_fit(train_x, config.pca_k); });
        rep.pca_rank_deficient = pca.rank_deficient;
        rep.scree = pca.explained_variance_ratio;
        train_x = dense_from(stage("pca", [&] { return pca_transform(pca, train_x); }));
        test_x = dense_from(stage("pca", [&] { return pca_transform(pca, test_x); }));
    }
    rep.feature_dim = train_x.cols();

    std::unique_ptr<Model> model = stage("train", [&]() -> std::unique_ptr<Model> {
        switch (config.classifier) {
            case ClassifierId::nb: {
                NbConfig cfg = config.nb;
                cfg.variant = config.features == FeatureMethod::bow
                                  ? NbVariant::multinomial
                                  : NbVariant::gaussian;
                rep.config.nb.variant = cfg.variant;
                return std::make_unique<NbModel>(train_nb(train_x, train_y, cfg));
            }
            case ClassifierId::knn:
                return std::make_unique<KnnModel>(
                    train_knn(train_x, train_y, config.knn));
            case ClassifierId::svm: {
                SvmModel m = train_svm(train_x, train_y, config.svm);
                rep.svm_converged = m.converged;
                return std::make_unique<SvmModel>(std::move(m));
            }
            case ClassifierId::lda:
                return std::make_unique<LdaModel>(
                    train_lda(train_x, train_y, config.lda));
            case ClassifierId::dt:
                return std::make_unique<DtModel>(train_dt(train_x, train_y, config.dt));
            case ClassifierId::dnn:
                return std::make_unique<DnnModel>(
                    train_dnn(train_x, train_y, config.dnn));
        }
        throw ConfigError("unhandled classifier id");
    });

    rep.threshold = config.threshold ? *config.threshold : model->default_threshold();

    std::vector<double> scores(test_x.rows());
    std::vector<Label> preds(test_x.rows());
    stage("score", [&] {
        for (std::size_t i = 0; i < test_x.rows(); ++i) {
            scores[i] = model->score(test_x.row(i));
            preds[i] = scores[i] >= rep.threshold ? Label::spam : Label::ham;
        }
        return 0;
    });

    stage("evaluate", [&] {
        rep.cm = confusion(test_y, preds);
        rep.metrics = class_metrics(rep.cm);
        rep.roc = roc_auc(test_y, scores);
        return 0;
    });

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config) {
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();
    const Prepared prep = prepare(config);
    RunReport rep = run_prepared(config, prep);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

GridReport run_grid(const ExperimentConfig& base) {
    validate(base);
    const auto t0 = std::chrono::steady_clock::now();
    GridReport grid;
    grid.base = base;
    const Prepared prep = prepare(base);

    static constexpr ClassifierId kRows[] = {ClassifierId::nb,  ClassifierId::knn,
                                             ClassifierId::svm, ClassifierId::lda,
                                             ClassifierId::dt,  ClassifierId::dnn};
    static constexpr FeatureMethod kCols[] = {FeatureMethod::bow, FeatureMethod::tfidf};

    std::uint64_t index = 0;
    for (const ClassifierId cls : kRows) {
        for (const FeatureMethod feat : kCols) {
            GridCell cell;
            cell.classifier = cls;
            cell.features = feat;
            cell.seed = base.split.seed + index;
            ExperimentConfig cfg = base;
            cfg.classifier = cls;
            cfg.features = feat;
            apply_seed(cfg, cell.seed);
            try {
                cell.report = run_prepared(cfg, prep);
            } catch (const Error& e) {
                cell.error = e.what();
            }
            grid.cells.push_back(std::move(cell));
            ++index;
        }
    }
    grid.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return grid;
}

}  // namespace spamlab
