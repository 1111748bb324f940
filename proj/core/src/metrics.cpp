#include "spamlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spamlab/error.hpp"

namespace spamlab {

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

ConfusionMatrix confusion(std::span<const Label> truth,
                          std::span<const Label> predicted) {
    if (truth.size() != predicted.size())
        throw DataError("confusion: truth and prediction sizes differ");
    if (truth.empty()) throw DataError("confusion: empty label spans");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool t = truth[i] == Label::spam;
        const bool p = predicted[i] == Label::spam;
        if (t && p)
            ++cm.tp;
        else if (!t && p)
            ++cm.fp;
        else if (t && !p)
            ++cm.fn;
        else
            ++cm.tn;
    }
    return cm;
}

ClassMetrics class_metrics(const ConfusionMatrix& cm) {
    const auto tp = static_cast<double>(cm.tp);
    const auto fp = static_cast<double>(cm.fp);
    const auto fn = static_cast<double>(cm.fn);
    const auto tn = static_cast<double>(cm.tn);

    ClassMetrics m;
    m.spam.precision = ratio(tp, tp + fp);
    m.spam.recall = ratio(tp, tp + fn);
    m.spam.f1 = ratio(2.0 * m.spam.precision * m.spam.recall,
                      m.spam.precision + m.spam.recall);
    m.ham.precision = ratio(tn, tn + fn);
    m.ham.recall = ratio(tn, tn + fp);
    m.ham.f1 =
        ratio(2.0 * m.ham.precision * m.ham.recall, m.ham.precision + m.ham.recall);
    m.accuracy = ratio(tp + tn, tp + fp + fn + tn);
    return m;
}

RocCurve roc_auc(std::span<const Label> truth, std::span<const double> scores) {
    if (truth.size() != scores.size())
        throw DataError("roc_auc: truth and score sizes differ");
    if (truth.empty()) throw DataError("roc_auc: empty inputs");
    for (const double s : scores)
        if (!std::isfinite(s)) throw DataError("roc_auc: non-finite score");

    std::uint64_t n_pos = 0, n_neg = 0;
    for (const Label l : truth) (l == Label::spam ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0)
        throw DataError("roc_auc: truth contains a single class");

    std::vector<std::size_t> order(truth.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});  // threshold above every score
    const double pos = static_cast<double>(n_pos);
    const double neg = static_cast<double>(n_neg);
    std::uint64_t tp = 0, fp = 0;
    double auc = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        // one threshold per distinct score: consume the whole tied group
        const double s = scores[order[i]];
        std::uint64_t group_tp = 0, group_fp = 0;
        for (; i < order.size() && scores[order[i]] == s; ++i)
            (truth[order[i]] == Label::spam ? group_tp : group_fp)++;
        const RocPoint last = curve.points.back();
        tp += group_tp;
        fp += group_fp;
        const RocPoint next{static_cast<double>(fp) / neg,
                            static_cast<double>(tp) / pos};
        auc += (next.fpr - last.fpr) * (last.tpr + next.tpr) * 0.5;
        curve.points.push_back(next);
    }
    curve.auc = auc;
    return curve;
}

}  // namespace spamlab
