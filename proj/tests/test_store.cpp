#include <doctest.h>

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "spamlab/error.hpp"
#include "spamlab/models/decision_tree.hpp"
#include "spamlab/models/knn.hpp"
#include "spamlab/models/lda.hpp"
#include "spamlab/models/naive_bayes.hpp"
#include "spamlab/models/neural_net.hpp"
#include "spamlab/models/store.hpp"
#include "spamlab/models/svm.hpp"
#include "spamlab/rng.hpp"

using namespace spamlab;

namespace {

struct Fixture {
    FeatureMatrix x;
    std::vector<Label> y;
    FeatureMatrix queries;

    Fixture() {
        Rng rng(808);
        std::vector<double> vals;
        for (int i = 0; i < 24; ++i) {
            const bool spam = i % 2 == 0;
            y.push_back(spam ? Label::spam : Label::ham);
            for (int c = 0; c < 5; ++c)
                vals.push_back(std::abs(rng.normal()) +
                               (spam && c < 2 ? 1.5 : 0.0));
        }
        x = FeatureMatrix::dense(24, 5, vals);
        std::vector<double> qv;
        for (int i = 0; i < 6 * 5; ++i) qv.push_back(std::abs(rng.normal()));
        queries = FeatureMatrix::dense(6, 5, qv);
    }
};

// Serialize, reload, and require bit-identical scores on every query.
void roundtrip(const Model& model, const FeatureMatrix& queries) {
    const std::string text = model_to_json_string(model);
    const std::unique_ptr<Model> back = model_from_json_string(text);
    REQUIRE(back != nullptr);
    CHECK(back->kind() == model.kind());
    CHECK(back->input_dim() == model.input_dim());
    CHECK(back->default_threshold() == model.default_threshold());
    for (std::size_t i = 0; i < queries.rows(); ++i) {
        CAPTURE(i);
        CHECK(back->score(queries.row(i)) == model.score(queries.row(i)));
    }
    // A second serialization of the reloaded model is byte-identical.
    CHECK(model_to_json_string(*back) == text);
}

}  // namespace

TEST_CASE("store: every model kind round-trips through JSON") {
    const Fixture f;

    SUBCASE("naive bayes, multinomial") {
        NbConfig cfg;
        cfg.variant = NbVariant::multinomial;
        roundtrip(train_nb(f.x, f.y, cfg), f.queries);
    }
    SUBCASE("naive bayes, gaussian") {
        NbConfig cfg;
        cfg.variant = NbVariant::gaussian;
        roundtrip(train_nb(f.x, f.y, cfg), f.queries);
    }
    SUBCASE("knn") {
        KnnConfig cfg;
        cfg.k = 3;
        roundtrip(train_knn(f.x, f.y, cfg), f.queries);
    }
    SUBCASE("svm") {
        SvmConfig cfg;
        cfg.max_epochs = 50;
        roundtrip(train_svm(f.x, f.y, cfg), f.queries);
    }
    SUBCASE("lda") { roundtrip(train_lda(f.x, f.y, {}), f.queries); }
    SUBCASE("decision tree") {
        roundtrip(train_dt(f.x, f.y, {}), f.queries);
    }
    SUBCASE("dnn") {
        DnnConfig cfg;
        cfg.hidden = {6, 3};
        cfg.epochs = 2;
        roundtrip(train_dnn(f.x, f.y, cfg), f.queries);
    }
}

TEST_CASE("store: document shape") {
    const Fixture f;
    KnnConfig cfg;
    cfg.k = 2;
    const KnnModel m = train_knn(f.x, f.y, cfg);
    const std::string text = model_to_json_string(m);
    CHECK(text.find("\"schema_version\"") != std::string::npos);
    CHECK(text.find("\"model_kind\"") != std::string::npos);
    CHECK(text.find("\"knn\"") != std::string::npos);
    CHECK(text.find("\"hyperparameters\"") != std::string::npos);
    CHECK(text.find("\"parameters\"") != std::string::npos);
}

TEST_CASE("store: file save and load") {
    const Fixture f;
    const SvmModel m = train_svm(f.x, f.y, {});
    const auto dir =
        std::filesystem::temp_directory_path() / "spamlab_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / "svm_model.json";
    save_model(m, path);
    const std::unique_ptr<Model> back = load_model(path);
    for (std::size_t i = 0; i < f.queries.rows(); ++i)
        CHECK(back->score(f.queries.row(i)) == m.score(f.queries.row(i)));
    std::filesystem::remove(path);

    CHECK_THROWS_AS((void)load_model(dir / "no_such_model.json"), IoError);
}

TEST_CASE("store: malformed documents raise DataError") {
    CHECK_THROWS_AS((void)model_from_json_string("not json at all"),
                    DataError);
    CHECK_THROWS_AS((void)model_from_json_string("{}"), DataError);
    CHECK_THROWS_AS(
        (void)model_from_json_string(
            R"({"schema_version": 999, "model_kind": "svm"})"),
        DataError);
    CHECK_THROWS_AS(
        (void)model_from_json_string(
            R"({"schema_version": 1, "model_kind": "quantum",)"
            R"( "hyperparameters": {}, "parameters": {}})"),
        DataError);
}
