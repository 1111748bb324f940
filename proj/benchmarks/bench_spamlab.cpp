// Microbenchmarks for the pipeline's hot paths: preprocessing,
// vectorization, the eigensolvers behind PCA, and the trainers.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <string>
#include <vector>

#include "spamlab/eigen.hpp"
#include "spamlab/features.hpp"
#include "spamlab/models/knn.hpp"
#include "spamlab/models/naive_bayes.hpp"
#include "spamlab/models/svm.hpp"
#include "spamlab/pca.hpp"
#include "spamlab/rng.hpp"
#include "spamlab/textprep.hpp"

using namespace spamlab;

namespace {

// Synthetic SMS-like messages assembled from fixed pools so runs are
// comparable across machines and builds.
std::vector<std::string> make_messages(std::size_t n, std::uint64_t seed) {
    static const std::vector<std::string> ham_words = {
        "hey",    "are",   "we",     "still",  "meeting", "for",  "lunch",
        "today",  "call",  "me",     "when",   "you",     "get",  "home",
        "running", "late", "sorry",  "about",  "tonight", "the",  "movie",
        "thanks", "dinner", "was",   "lovely", "see",     "soon", "ok"};
    static const std::vector<std::string> spam_words = {
        "free",   "entry",  "winner", "claim",  "your",   "prize", "now",
        "urgent", "cash",   "award",  "text",   "stop",   "mobile", "offer",
        "guaranteed", "call", "customer", "line", "selected", "reply"};
    std::vector<std::string> out;
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pool = i % 7 == 0 ? spam_words : ham_words;
        const std::size_t len = 4 + rng.below(14);
        std::string msg;
        for (std::size_t w = 0; w < len; ++w) {
            if (w) msg += ' ';
            msg += pool[rng.below(pool.size())];
        }
        out.push_back(std::move(msg));
    }
    return out;
}

std::vector<TokenizedDoc> make_docs(std::size_t n, std::uint64_t seed) {
    std::vector<TokenizedDoc> docs;
    for (const auto& msg : make_messages(n, seed))
        docs.push_back(preprocess(msg, StopwordList::builtin()));
    return docs;
}

FeatureMatrix blob(std::size_t n, std::size_t d, std::vector<Label>& y,
                   std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> vals;
    y.clear();
    for (std::size_t i = 0; i < n; ++i) {
        const bool spam = i % 2 == 0;
        y.push_back(spam ? Label::spam : Label::ham);
        for (std::size_t c = 0; c < d; ++c)
            vals.push_back(rng.normal() + (spam && c < 3 ? 1.5 : 0.0));
    }
    return FeatureMatrix::dense(n, d, std::move(vals));
}

void bm_preprocess(benchmark::State& state) {
    const auto messages =
        make_messages(static_cast<std::size_t>(state.range(0)), 1);
    const StopwordList& stop = StopwordList::builtin();
    for (auto _ : state) {
        for (const auto& msg : messages)
            benchmark::DoNotOptimize(preprocess(msg, stop));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(messages.size()));
}
BENCHMARK(bm_preprocess)->Arg(100)->Arg(1000);

void bm_porter_stem(benchmark::State& state) {
    const std::vector<std::string> words = {
        "relational", "conditional", "vietnamization", "hopefulness",
        "formalize",  "triplicate",  "electricity",    "adjustable",
        "replacement", "activate",   "generalizations", "oscillators"};
    for (auto _ : state) {
        for (const auto& w : words)
            benchmark::DoNotOptimize(porter_stem(w));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(words.size()));
}
BENCHMARK(bm_porter_stem);

void bm_featurize(benchmark::State& state) {
    const auto docs = make_docs(static_cast<std::size_t>(state.range(0)), 2);
    const std::size_t split = docs.size() * 4 / 5;
    const std::vector<TokenizedDoc> train(docs.begin(),
                                          docs.begin() +
                                              static_cast<std::ptrdiff_t>(split));
    const std::vector<TokenizedDoc> test(docs.begin() +
                                             static_cast<std::ptrdiff_t>(split),
                                         docs.end());
    const FeatureMethod method =
        state.range(1) == 0 ? FeatureMethod::bow : FeatureMethod::tfidf;
    for (auto _ : state)
        benchmark::DoNotOptimize(featurize_split(train, test, method));
}
BENCHMARK(bm_featurize)->Args({1000, 0})->Args({1000, 1});

void bm_jacobi(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.at(i, j) = a.at(j, i) = rng.normal();
    for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigen(a));
}
BENCHMARK(bm_jacobi)->Arg(16)->Arg(64)->Arg(128);

void bm_pca_fit(benchmark::State& state) {
    std::vector<Label> y;
    const FeatureMatrix x =
        blob(static_cast<std::size_t>(state.range(0)), 200, y, 4);
    for (auto _ : state) benchmark::DoNotOptimize(pca_fit(x, 10));
}
BENCHMARK(bm_pca_fit)->Arg(100)->Arg(500);

void bm_svm_train(benchmark::State& state) {
    std::vector<Label> y;
    const FeatureMatrix x =
        blob(static_cast<std::size_t>(state.range(0)), 30, y, 5);
    SvmConfig cfg;
    cfg.max_epochs = 200;
    for (auto _ : state) benchmark::DoNotOptimize(train_svm(x, y, cfg));
}
BENCHMARK(bm_svm_train)->Arg(200)->Arg(1000);

void bm_nb_train(benchmark::State& state) {
    const auto docs = make_docs(1000, 6);
    std::vector<Label> y;
    for (std::size_t i = 0; i < docs.size(); ++i)
        y.push_back(i % 7 == 0 ? Label::spam : Label::ham);
    const Vocabulary vocab = build_vocabulary(docs);
    std::vector<SparseVector> rows;
    for (const auto& d : docs) rows.push_back(bow_vector(d, vocab));
    const FeatureMatrix x = FeatureMatrix::from_sparse_rows(rows, vocab.size());
    for (auto _ : state) benchmark::DoNotOptimize(train_nb(x, y, {}));
}
BENCHMARK(bm_nb_train);

void bm_knn_score(benchmark::State& state) {
    std::vector<Label> y;
    const FeatureMatrix x =
        blob(static_cast<std::size_t>(state.range(0)), 50, y, 7);
    const KnnModel m = train_knn(x, y, {});
    std::vector<Label> qy;
    const FeatureMatrix q = blob(100, 50, qy, 8);
    for (auto _ : state) {
        for (std::size_t i = 0; i < q.rows(); ++i)
            benchmark::DoNotOptimize(m.score(q.row(i)));
    }
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(bm_knn_score)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
