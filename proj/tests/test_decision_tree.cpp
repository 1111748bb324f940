#include <doctest.h>

#include <cstddef>
#include <vector>

#include "spamlab/error.hpp"
#include "spamlab/models/decision_tree.hpp"
#include "spamlab/rng.hpp"

using namespace spamlab;

namespace {

std::vector<Label> labels(const std::vector<int>& raw) {
    std::vector<Label> out;
    for (const int v : raw) out.push_back(v ? Label::spam : Label::ham);
    return out;
}

FeatureMatrix rows(const std::vector<std::vector<double>>& r) {
    std::vector<double> flat;
    for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
    return FeatureMatrix::dense(r.size(), r.empty() ? 0 : r[0].size(), flat);
}

}  // namespace

TEST_CASE("dt: single axis-aligned split") {
    // Separable at x0 = 2.5; candidate midpoints are 1.5, 2.5, 3.5 and only
    // 2.5 is pure on both sides.
    const FeatureMatrix x = rows({{1}, {2}, {3}, {4}});
    const std::vector<Label> y = labels({0, 0, 1, 1});
    const DtModel m = train_dt(x, y, {});

    REQUIRE(m.nodes.size() == 3);
    const DtNode& root = m.nodes[0];
    CHECK_FALSE(root.is_leaf());
    CHECK(root.feature == 0);
    CHECK(root.threshold == doctest::Approx(2.5));
    CHECK(root.spam_fraction == doctest::Approx(0.5));
    CHECK(m.nodes[root.left].is_leaf());
    CHECK(m.nodes[root.left].spam_fraction == doctest::Approx(0.0));
    CHECK(m.nodes[root.right].is_leaf());
    CHECK(m.nodes[root.right].spam_fraction == doctest::Approx(1.0));

    // <= goes left: the boundary value itself lands on the ham side.
    const FeatureMatrix q = rows({{2.5}, {2.500001}});
    CHECK(m.score(q.row(0)) == doctest::Approx(0.0));
    CHECK(m.score(q.row(1)) == doctest::Approx(1.0));
}

TEST_CASE("dt: fits XOR exactly via a zero-gain root split") {
    // No single split reduces Gini, so a strictly-positive-gain rule would
    // refuse to grow and stay at 0.5 everywhere.
    const FeatureMatrix x = rows({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const std::vector<Label> y = labels({0, 1, 1, 0});
    const DtModel m = train_dt(x, y, {});

    for (std::size_t i = 0; i < 4; ++i) {
        CAPTURE(i);
        const double expect = (i == 1 || i == 2) ? 1.0 : 0.0;
        CHECK(m.score(x.row(i)) == doctest::Approx(expect));
    }
    // Zero-gain candidates tie, so the lowest feature index wins at the root.
    CHECK(m.nodes[0].feature == 0);
    CHECK(m.nodes[0].threshold == doctest::Approx(0.5));
}

TEST_CASE("dt: max_depth=1 builds a stump") {
    const FeatureMatrix x = rows({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const std::vector<Label> y = labels({0, 1, 1, 0});
    DtConfig cfg;
    cfg.max_depth = 1;
    const DtModel m = train_dt(x, y, cfg);

    REQUIRE(m.nodes.size() == 3);
    CHECK(m.nodes[m.nodes[0].left].is_leaf());
    CHECK(m.nodes[m.nodes[0].right].is_leaf());
    // Each XOR half is still 50/50 spam.
    CHECK(m.score(x.row(0)) == doctest::Approx(0.5));
    CHECK(m.score(x.row(3)) == doctest::Approx(0.5));
}

TEST_CASE("dt: min_samples_split stops growth") {
    const FeatureMatrix x = rows({{1}, {2}, {3}, {4}});
    const std::vector<Label> y = labels({0, 1, 0, 1});
    DtConfig cfg;
    cfg.min_samples_split = 5;
    const DtModel m = train_dt(x, y, cfg);

    REQUIRE(m.nodes.size() == 1);
    CHECK(m.nodes[0].is_leaf());
    CHECK(m.nodes[0].spam_fraction == doctest::Approx(0.5));
}

TEST_CASE("dt: pure node becomes a leaf immediately") {
    // After the root split at 1.5, the right child holds five spam rows —
    // well above min_samples_split — so only purity can stop the recursion.
    const FeatureMatrix x = rows({{1}, {2}, {3}, {4}, {5}, {6}});
    const std::vector<Label> y = labels({0, 1, 1, 1, 1, 1});
    const DtModel m = train_dt(x, y, {});

    REQUIRE(m.nodes.size() == 3);
    const DtNode& root = m.nodes[0];
    CHECK(root.feature == 0);
    CHECK(root.threshold == doctest::Approx(1.5));
    CHECK(m.nodes[root.left].is_leaf());
    CHECK(m.nodes[root.left].spam_fraction == doctest::Approx(0.0));
    CHECK(m.nodes[root.right].is_leaf());
    CHECK(m.nodes[root.right].spam_fraction == doctest::Approx(1.0));
}

TEST_CASE("dt: constant features leave no valid split") {
    const FeatureMatrix x = rows({{2, 2}, {2, 2}, {2, 2}});
    const std::vector<Label> y = labels({0, 1, 0});
    const DtModel m = train_dt(x, y, {});
    REQUIRE(m.nodes.size() == 1);
    CHECK(m.nodes[0].is_leaf());
    CHECK(m.nodes[0].spam_fraction == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("dt: equal-gain ties prefer the lowest feature then threshold") {
    // Feature 1 mirrors feature 0, so both offer identical splits; the tie
    // must go to feature 0. Within feature 0 the only useful midpoint is 0.5.
    const FeatureMatrix x = rows({{0, 0}, {0, 0}, {1, 1}, {1, 1}});
    const std::vector<Label> y = labels({0, 0, 1, 1});
    const DtModel m = train_dt(x, y, {});
    CHECK(m.nodes[0].feature == 0);
    CHECK(m.nodes[0].threshold == doctest::Approx(0.5));
}

TEST_CASE("dt: perfectly memorizes jittered random training data") {
    Rng rng(41);
    std::vector<std::vector<double>> pts;
    std::vector<int> raw;
    for (int i = 0; i < 60; ++i) {
        pts.push_back({rng.normal(), rng.normal(), rng.normal()});
        raw.push_back(static_cast<int>(rng.below(2)));
    }
    const FeatureMatrix x = rows(pts);
    const std::vector<Label> y = labels(raw);
    DtConfig cfg;
    cfg.max_depth = 0;  // unlimited
    const DtModel m = train_dt(x, y, cfg);
    for (std::size_t i = 0; i < 60; ++i) {
        CAPTURE(i);
        CHECK(m.score(x.row(i)) == doctest::Approx(raw[i] ? 1.0 : 0.0));
    }
    // Tree layout is deterministic: retraining gives the same nodes.
    const DtModel m2 = train_dt(x, y, cfg);
    REQUIRE(m2.nodes.size() == m.nodes.size());
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
        CHECK(m2.nodes[i].feature == m.nodes[i].feature);
        CHECK(m2.nodes[i].threshold == m.nodes[i].threshold);
    }
}

TEST_CASE("dt input validation") {
    const FeatureMatrix x = rows({{1}, {2}});
    CHECK_THROWS_AS((void)train_dt(x, labels({0}), {}), DataError);
    CHECK_THROWS_AS(
        (void)train_dt(FeatureMatrix::dense(0, 0, {}), labels({}), {}),
        DataError);
    DtConfig bad;
    bad.min_samples_split = 1;
    CHECK_THROWS_AS((void)train_dt(x, labels({0, 1}), bad), ConfigError);
}
