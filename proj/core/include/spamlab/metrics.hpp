#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spamlab/corpus.hpp"

namespace spamlab {

// Spam is the positive class throughout.
struct ConfusionMatrix {
    std::uint64_t tp = 0;  // spam predicted spam
    std::uint64_t fp = 0;  // ham predicted spam
    std::uint64_t fn = 0;  // spam predicted ham
    std::uint64_t tn = 0;  // ham predicted ham

    std::uint64_t total() const { return tp + fp + fn + tn; }
};

// Requires equally sized, non-empty label spans.
ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted);

struct ClassScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Per-class precision/recall/F1 plus overall accuracy; every 0/0 ratio is
// defined as 0.0.
struct ClassMetrics {
    ClassScores spam;
    ClassScores ham;
    double accuracy = 0.0;
};

ClassMetrics class_metrics(const ConfusionMatrix& cm);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

// Points from sweeping a threshold over the distinct scores in descending
// order (starting above the maximum), tied scores grouped; monotone in both
// coordinates from (0,0) to (1,1). auc is the trapezoidal area, equal to the
// Mann-Whitney U statistic with half credit for ties.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

// Requires both classes present in `truth` and finite scores.
RocCurve roc_auc(std::span<const Label> truth, std::span<const double> scores);

}  // namespace spamlab
