// spamlab command-line interface: bench (full grid), run (one configuration),
// scree (TF-IDF -> PCA explained-variance table).
//
// Exit codes: 0 success, 1 usage/configuration error, 2 I/O or data error,
// 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spamlab/bench/experiment.hpp"
#include "spamlab/bench/report.hpp"
#include "spamlab/error.hpp"
#include "spamlab/pca.hpp"
#include "spamlab/textprep.hpp"

namespace {

struct CommonOpts {
    std::string data;
    std::string stopwords;
    std::string out = "reports";
    double train_frac = 0.8;
    std::uint64_t seed = 42;
    bool seed_given = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--data", o.data, "input CSV (Category,Message header)")
        ->required();
    cmd->add_option("--stopwords", o.stopwords,
                    "stopword file, one word per line (default: built-in list)");
    cmd->add_option("--out", o.out, "output directory for report files")
        ->capture_default_str();
    cmd->add_option("--train-frac", o.train_frac,
                    "training fraction of the stratified split, in (0, 1)")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed,
                    "base RNG seed (env SPAMLAB_SEED overrides this default)")
        ->capture_default_str();
}

// --seed beats SPAMLAB_SEED beats the built-in default.
std::uint64_t resolve_seed(const CommonOpts& o) {
    if (o.seed_given) return o.seed;
    if (const char* env = std::getenv("SPAMLAB_SEED")) {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(env, &pos);
            if (pos != std::string(env).size()) throw std::invalid_argument(env);
            return static_cast<std::uint64_t>(v);
        } catch (const std::exception&) {
            throw spamlab::ConfigError(
                "SPAMLAB_SEED is not a non-negative integer: '" + std::string(env) +
                "'");
        }
    }
    return o.seed;
}

spamlab::ExperimentConfig base_config(const CommonOpts& o) {
    spamlab::ExperimentConfig cfg;
    cfg.data_path = o.data;
    if (!o.stopwords.empty()) cfg.stopwords_path = o.stopwords;
    cfg.split.train_fraction = o.train_frac;
    spamlab::apply_seed(cfg, resolve_seed(o));
    return cfg;
}

void print_run(const spamlab::RunReport& r) {
    const auto& m = r.metrics;
    std::cout << "corpus: " << r.corpus_size << " messages (" << r.corpus_ham
              << " ham / " << r.corpus_spam << " spam)\n"
              << "split: " << r.train_size << " train / " << r.test_size
              << " test (seed " << r.seed << ")"
              << (r.degenerate_split ? "  [degenerate]" : "") << "\n"
              << "features: " << spamlab::feature_method_name(r.config.features)
              << ", vocabulary " << r.vocab_size << " terms, dimension "
              << r.feature_dim << "\n"
              << "model: " << spamlab::classifier_id_name(r.config.classifier)
              << " (threshold " << r.threshold << ")";
    if (r.config.classifier == spamlab::ClassifierId::svm && !r.svm_converged)
        std::cout << "  [svm hit max_epochs before tolerance]";
    std::cout << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "accuracy %.4f   auc %.4f\n", m.accuracy,
                  r.roc.auc);
    std::cout << line;
    std::snprintf(line, sizeof line, "  %-5s precision %.4f  recall %.4f  f1 %.4f\n",
                  "ham", m.ham.precision, m.ham.recall, m.ham.f1);
    std::cout << line;
    std::snprintf(line, sizeof line, "  %-5s precision %.4f  recall %.4f  f1 %.4f\n",
                  "spam", m.spam.precision, m.spam.recall, m.spam.f1);
    std::cout << line;
    std::cout << "confusion: tp=" << r.cm.tp << " fp=" << r.cm.fp
              << " fn=" << r.cm.fn << " tn=" << r.cm.tn << "\n";
    std::snprintf(line, sizeof line, "wall: %.2f s\n", r.wall_seconds);
    std::cout << line;
}

int run_bench(const CommonOpts& o, const std::string& format) {
    spamlab::ExperimentConfig cfg = base_config(o);
    spamlab::validate(cfg);
    std::cout << "running 6x2 grid on " << o.data << " (seed "
              << cfg.split.seed << ")...\n";
    const spamlab::GridReport grid = spamlab::run_grid(cfg);

    std::vector<std::filesystem::path> written;
    if (format == "all") {
        written = spamlab::emit_report_all(grid, o.out);
    } else {
        spamlab::ReportFormat fmt = spamlab::ReportFormat::json;
        if (format == "csv") fmt = spamlab::ReportFormat::csv;
        else if (format == "md") fmt = spamlab::ReportFormat::markdown;
        else if (format != "json")
            throw spamlab::ConfigError("unknown --format '" + format +
                                       "' (expected json|csv|md|all)");
        written = spamlab::emit_report(grid, o.out, fmt);
    }

    for (const spamlab::GridCell& cell : grid.cells) {
        if (!cell.report)
            std::cout << "cell " << spamlab::cell_key(cell.classifier, cell.features)
                      << " failed: " << cell.error << "\n";
    }
    // The markdown table doubles as the console summary.
    std::cout << "\n" << spamlab::grid_to_markdown(grid);
    char line[96];
    std::snprintf(line, sizeof line, "\ngrid wall time: %.1f s\n", grid.wall_seconds);
    std::cout << line;
    std::cout << "wrote " << written.size() << " files to " << o.out << "\n";
    return 0;  // failed cells are reported in the table, not fatal
}

int run_single(const CommonOpts& o, const std::string& classifier,
               const std::string& features, std::size_t pca_k, std::size_t knn_k,
               double svm_c, std::size_t epochs, std::optional<double> threshold,
               const std::string& dump_vocab) {
    spamlab::ExperimentConfig cfg = base_config(o);
    cfg.classifier = spamlab::classifier_from_name(classifier);
    cfg.features = spamlab::feature_from_name(features);
    cfg.pca_k = pca_k;
    cfg.knn.k = knn_k;
    cfg.svm.c = svm_c;
    cfg.dnn.epochs = epochs;
    cfg.threshold = threshold;
    if (!dump_vocab.empty()) cfg.dump_vocab = dump_vocab;
    spamlab::validate(cfg);

    const spamlab::RunReport rep = spamlab::run_experiment(cfg);
    print_run(rep);
    const auto written = spamlab::emit_report(rep, o.out);
    std::cout << "wrote " << written.size() << " files to " << o.out << "\n";
    return 0;
}

int run_scree(const CommonOpts& o, std::size_t pca_k) {
    spamlab::ExperimentConfig cfg = base_config(o);
    cfg.features = spamlab::FeatureMethod::tfidf;
    cfg.pca_k = pca_k;
    spamlab::validate(cfg);

    const spamlab::Corpus corpus = spamlab::load_csv(cfg.data_path);
    const spamlab::StopwordList custom =
        cfg.stopwords_path ? spamlab::StopwordList::from_file(*cfg.stopwords_path)
                           : spamlab::StopwordList();
    const spamlab::StopwordList& stopwords =
        cfg.stopwords_path ? custom : spamlab::StopwordList::builtin();

    std::vector<spamlab::TokenizedDoc> docs;
    docs.reserve(corpus.messages.size());
    for (const auto& msg : corpus.messages)
        docs.push_back(spamlab::preprocess(msg.text, stopwords));

    const spamlab::DataSplit split = spamlab::stratified_split(corpus, cfg.split);
    std::vector<spamlab::TokenizedDoc> train_docs, test_docs;
    for (const std::size_t i : split.train_indices) train_docs.push_back(docs[i]);
    for (const std::size_t i : split.test_indices) test_docs.push_back(docs[i]);

    const spamlab::FeaturizedSplit feats = spamlab::featurize_split(
        train_docs, test_docs, spamlab::FeatureMethod::tfidf);
    const spamlab::PcaModel pca = spamlab::pca_fit(feats.train, cfg.pca_k);
    const auto data = spamlab::scree_data(pca);

    std::cout << "component  explained_variance_ratio\n";
    for (const auto& [component, ratio] : data) {
        char line[64];
        std::snprintf(line, sizeof line, "%9zu  %.6f\n", component, ratio);
        std::cout << line;
    }
    if (pca.rank_deficient)
        std::cout << "note: requested components exceeded the data rank; "
                     "list truncated\n";
    const auto written = spamlab::emit_scree_csv(data, o.out);
    std::cout << "wrote " << written.front().string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spamlab: SMS spam-filtering benchmark toolkit"};
    app.require_subcommand(1);

    CommonOpts bench_o, run_o, scree_o;
    std::string bench_format = "all";

    CLI::App* bench = app.add_subcommand(
        "bench", "train and evaluate all six classifiers on BoW and TF-IDF");
    add_common(bench, bench_o);
    bench->add_option("--format", bench_format, "grid table format: json|csv|md|all")
        ->capture_default_str();

    std::string run_classifier, run_features = "bow", run_dump_vocab;
    std::size_t run_pca_k = 10, run_knn_k = 5, run_epochs = 30;
    double run_svm_c = 1.0;
    std::optional<double> run_threshold;
    double run_threshold_val = 0.0;

    CLI::App* runc = app.add_subcommand("run", "train and evaluate one configuration");
    add_common(runc, run_o);
    runc->add_option("--classifier", run_classifier, "nb|knn|svm|lda|dt|dnn")
        ->required();
    runc->add_option("--features", run_features, "bow|tfidf")->capture_default_str();
    runc->add_option("--pca-k", run_pca_k, "PCA components for tfidf runs")
        ->capture_default_str();
    runc->add_option("--k", run_knn_k, "neighbours for knn")->capture_default_str();
    runc->add_option("--c", run_svm_c, "SVM box constraint")->capture_default_str();
    runc->add_option("--epochs", run_epochs, "training epochs for dnn")
        ->capture_default_str();
    CLI::Option* thr_opt =
        runc->add_option("--threshold", run_threshold_val,
                         "decision threshold (default: the model's own)");
    runc->add_option("--dump-vocab", run_dump_vocab,
                     "write the fitted vocabulary (term, index, doc freq) here");

    CLI::App* scree = app.add_subcommand(
        "scree", "explained-variance table for TF-IDF features under PCA");
    add_common(scree, scree_o);
    std::size_t scree_pca_k = 10;
    scree->add_option("--pca-k", scree_pca_k, "number of PCA components")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    bench_o.seed_given = bench->count("--seed") > 0;
    run_o.seed_given = runc->count("--seed") > 0;
    scree_o.seed_given = scree->count("--seed") > 0;
    if (thr_opt->count() > 0) run_threshold = run_threshold_val;

    try {
        if (app.got_subcommand(bench)) return run_bench(bench_o, bench_format);
        if (app.got_subcommand(runc))
            return run_single(run_o, run_classifier, run_features, run_pca_k,
                              run_knn_k, run_svm_c, run_epochs, run_threshold,
                              run_dump_vocab);
        if (app.got_subcommand(scree)) return run_scree(scree_o, scree_pca_k);
    } catch (const spamlab::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const spamlab::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const spamlab::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const spamlab::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
