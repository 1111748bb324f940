#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "spamlab/error.hpp"
#include "spamlab/models/neural_net.hpp"
#include "spamlab/rng.hpp"

using namespace spamlab;

namespace {

std::vector<Label> labels(const std::vector<int>& raw) {
    std::vector<Label> out;
    for (const int v : raw) out.push_back(v ? Label::spam : Label::ham);
    return out;
}

DnnModel make_net(std::size_t dim, std::vector<std::size_t> hidden,
                  std::uint64_t seed) {
    DnnModel net;
    net.dim = dim;
    net.config.hidden = hidden;
    std::vector<std::size_t> sizes{dim};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(1);
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        DenseMatrix w(sizes[l], sizes[l + 1]);
        for (double& v : w.values()) v = rng.normal() * 0.6;
        net.weights.push_back(std::move(w));
        std::vector<double> b(sizes[l + 1]);
        for (double& v : b) v = rng.normal() * 0.1;
        net.biases.push_back(std::move(b));
    }
    return net;
}

// Central finite differences of the batch loss with respect to every
// parameter, compared against the analytic gradients.
void gradcheck(DnnModel net, const FeatureMatrix& x,
               const std::vector<std::size_t>& rows,
               const std::vector<double>& targets, const DnnMasks* masks) {
    DnnGradients grads;
    (void)dnn_loss_and_gradients(net, x, rows, targets, masks, &grads);

    const double h = 1e-5;
    double worst = 0.0;
    auto probe = [&](double& param, double analytic) {
        const double saved = param;
        param = saved + h;
        const double up = dnn_loss_and_gradients(net, x, rows, targets, masks,
                                                 nullptr);
        param = saved - h;
        const double dn = dnn_loss_and_gradients(net, x, rows, targets, masks,
                                                 nullptr);
        param = saved;
        const double fd = (up - dn) / (2.0 * h);
        const double rel =
            std::abs(fd - analytic) / std::max(1e-6, std::abs(fd) + std::abs(analytic));
        worst = std::max(worst, rel);
    };

    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        auto& wv = net.weights[l].values();
        for (std::size_t i = 0; i < wv.size(); ++i)
            probe(wv[i], grads.weights[l].values()[i]);
        for (std::size_t i = 0; i < net.biases[l].size(); ++i)
            probe(net.biases[l][i], grads.biases[l][i]);
    }
    CHECK(worst < 1e-4);
}

}  // namespace

TEST_CASE("dnn: loss matches hand-computed binary cross-entropy") {
    // No hidden layers: plain logistic regression, small enough to do on
    // paper. w = (1, -2), b = 0.5.
    DnnModel net;
    net.dim = 2;
    net.config.hidden = {};
    DenseMatrix w(2, 1);
    w.at(0, 0) = 1.0;
    w.at(1, 0) = -2.0;
    net.weights.push_back(w);
    net.biases.push_back({0.5});

    const FeatureMatrix x =
        FeatureMatrix::dense(2, 2, {1.0, 0.25, -0.5, 1.0});
    const std::vector<std::size_t> rows{0, 1};
    const std::vector<double> targets{1.0, 0.0};
    // z0 = 1 - 0.5 + 0.5 = 1, z1 = -0.5 - 2 + 0.5 = -2
    const double l0 = std::log1p(std::exp(-1.0));       // -log sigmoid(1)
    const double l1 = std::log1p(std::exp(-2.0));       // -log(1 - sigmoid(-2))
    const double expect = 0.5 * (l0 + l1);

    const double got =
        dnn_loss_and_gradients(net, x, rows, targets, nullptr, nullptr);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));

    // score() agrees with sigmoid of the same affine map.
    CHECK(net.score(x.row(0)) ==
          doctest::Approx(1.0 / (1.0 + std::exp(-1.0))).epsilon(1e-12));
}

TEST_CASE("dnn: analytic gradients match finite differences") {
    Rng data_rng(777);
    std::vector<double> vals(5 * 4);
    for (double& v : vals) v = data_rng.normal();
    const FeatureMatrix x = FeatureMatrix::dense(5, 4, vals);
    std::vector<std::size_t> rows(5);
    std::iota(rows.begin(), rows.end(), 0);
    const std::vector<double> targets{1.0, 0.0, 1.0, 1.0, 0.0};

    SUBCASE("two hidden layers, no dropout") {
        gradcheck(make_net(4, {3, 2}, 11), x, rows, targets, nullptr);
    }
    SUBCASE("single hidden layer") {
        gradcheck(make_net(4, {5}, 12), x, rows, targets, nullptr);
    }
    SUBCASE("no hidden layer") {
        gradcheck(make_net(4, {}, 13), x, rows, targets, nullptr);
    }
    SUBCASE("fixed dropout masks enter the chain rule") {
        const DnnModel net = make_net(4, {3, 2}, 14);
        DnnMasks masks;
        Rng mask_rng(15);
        const double keep_inv = 1.0 / 0.7;
        masks.values.assign(5, {});
        for (auto& per_sample : masks.values) {
            per_sample = {std::vector<double>(3), std::vector<double>(2)};
            for (auto& layer : per_sample)
                for (double& m : layer)
                    m = mask_rng.uniform01() < 0.3 ? 0.0 : keep_inv;
        }
        gradcheck(net, x, rows, targets, &masks);
    }
    SUBCASE("sparse input rows") {
        std::vector<SparseVector> sparse_rows(5);
        for (std::size_t r = 0; r < 5; ++r) {
            sparse_rows[r].dim = 4;
            for (std::size_t c = 0; c < 4; ++c)
                if ((r + c) % 2 == 0)
                    sparse_rows[r].entries.emplace_back(c, vals[r * 4 + c]);
        }
        const FeatureMatrix xs = FeatureMatrix::from_sparse_rows(sparse_rows, 4);
        REQUIRE_FALSE(xs.is_dense());
        gradcheck(make_net(4, {3}, 16), xs, rows, targets, nullptr);
    }
}

TEST_CASE("dnn: shapes follow the hidden-layer spec") {
    const FeatureMatrix x = FeatureMatrix::dense(
        6, 3, {0, 1, 0, 1, 0, 1, 0.5, 0.5, 0, 1, 1, 0, 0, 0, 1, 1, 0.5, 0});
    const std::vector<Label> y = labels({0, 1, 0, 1, 0, 1});
    DnnConfig cfg;
    cfg.hidden = {4, 3};
    cfg.dropout = 0.0;
    cfg.epochs = 1;
    const DnnModel m = train_dnn(x, y, cfg);

    REQUIRE(m.layer_count() == 3);
    CHECK(m.weights[0].rows() == 3);
    CHECK(m.weights[0].cols() == 4);
    CHECK(m.weights[1].rows() == 4);
    CHECK(m.weights[1].cols() == 3);
    CHECK(m.weights[2].rows() == 3);
    CHECK(m.weights[2].cols() == 1);
    CHECK(m.biases[0].size() == 4);
    CHECK(m.biases[2].size() == 1);
    CHECK(m.input_dim() == 3);
}

TEST_CASE("dnn: training is deterministic in the seed") {
    Rng data_rng(5150);
    std::vector<double> vals(40 * 6);
    for (double& v : vals) v = data_rng.normal();
    std::vector<int> raw;
    for (int i = 0; i < 40; ++i) raw.push_back(i % 2);
    const FeatureMatrix x = FeatureMatrix::dense(40, 6, vals);
    const std::vector<Label> y = labels(raw);

    DnnConfig cfg;
    cfg.hidden = {8};
    cfg.dropout = 0.2;
    cfg.epochs = 3;
    cfg.batch_size = 8;
    cfg.seed = 99;

    const DnnModel a = train_dnn(x, y, cfg);
    const DnnModel b = train_dnn(x, y, cfg);
    for (std::size_t l = 0; l < a.layer_count(); ++l) {
        CHECK(a.weights[l].values() == b.weights[l].values());
        CHECK(a.biases[l] == b.biases[l]);
    }

    cfg.seed = 100;
    const DnnModel c = train_dnn(x, y, cfg);
    CHECK(a.weights[0].values() != c.weights[0].values());
}

TEST_CASE("dnn: learns a linearly separable blob") {
    Rng rng(2718);
    std::vector<double> vals;
    std::vector<int> raw;
    for (int i = 0; i < 60; ++i) {
        const bool spam = i % 2 == 0;
        raw.push_back(spam);
        vals.push_back(rng.normal() * 0.3 + (spam ? 2.0 : -2.0));
        vals.push_back(rng.normal() * 0.3);
    }
    const FeatureMatrix x = FeatureMatrix::dense(60, 2, vals);
    const std::vector<Label> y = labels(raw);

    DnnConfig cfg;
    cfg.hidden = {8};
    cfg.dropout = 0.0;
    cfg.learning_rate = 0.05;
    cfg.epochs = 60;
    cfg.batch_size = 10;
    const DnnModel m = train_dnn(x, y, cfg);

    std::size_t correct = 0;
    for (std::size_t i = 0; i < 60; ++i) {
        const double s = m.score(x.row(i));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        if ((s > 0.5) == (raw[i] != 0)) ++correct;
    }
    CHECK(correct == 60);
}

TEST_CASE("dnn: exploding updates raise NumericError") {
    // Labels symmetric in the input sign so the first gradient step is huge
    // no matter which way the initial weight points.
    const FeatureMatrix x =
        FeatureMatrix::dense(4, 1, {1000.0, -1000.0, 900.0, -900.0});
    const std::vector<Label> y = labels({1, 1, 0, 0});
    DnnConfig cfg;
    cfg.hidden = {};
    cfg.dropout = 0.0;
    cfg.learning_rate = 1e308;
    cfg.momentum = 0.0;
    cfg.epochs = 3;
    cfg.batch_size = 4;
    CHECK_THROWS_AS((void)train_dnn(x, y, cfg), NumericError);
}

TEST_CASE("dnn config and batch validation") {
    const FeatureMatrix x = FeatureMatrix::dense(2, 1, {0.0, 1.0});
    const std::vector<Label> y = labels({0, 1});
    DnnConfig cfg;
    cfg.hidden = {2};
    cfg.epochs = 1;

    DnnConfig bad = cfg;
    bad.learning_rate = 0.0;
    CHECK_THROWS_AS((void)train_dnn(x, y, bad), ConfigError);
    bad = cfg;
    bad.momentum = 1.0;
    CHECK_THROWS_AS((void)train_dnn(x, y, bad), ConfigError);
    bad = cfg;
    bad.dropout = 1.0;
    CHECK_THROWS_AS((void)train_dnn(x, y, bad), ConfigError);
    bad = cfg;
    bad.batch_size = 0;
    CHECK_THROWS_AS((void)train_dnn(x, y, bad), ConfigError);
    bad = cfg;
    bad.hidden = {4, 0};
    CHECK_THROWS_AS((void)train_dnn(x, y, bad), ConfigError);

    // Loss helper validates its batch arguments.
    const DnnModel net = make_net(1, {}, 1);
    const std::vector<std::size_t> rows{0};
    CHECK_THROWS_AS((void)dnn_loss_and_gradients(net, x, {}, {}, nullptr,
                                                 nullptr),
                    DataError);
    const std::vector<double> two_targets{0.0, 1.0};
    CHECK_THROWS_AS(
        (void)dnn_loss_and_gradients(net, x, rows, two_targets, nullptr, nullptr),
        DataError);
}
