#include "spamlab/models/model.hpp"

#include <cmath>

namespace spamlab {

const char* model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::nb: return "nb";
        case ModelKind::knn: return "knn";
        case ModelKind::svm: return "svm";
        case ModelKind::lda: return "lda";
        case ModelKind::dt: return "dt";
        case ModelKind::dnn: return "dnn";
    }
    return "unknown";
}

namespace detail {

void check_training_inputs(const FeatureMatrix& x, std::span<const Label> y) {
    if (x.rows() == 0) throw DataError("train: empty training set");
    if (x.rows() != y.size())
        throw DataError("train: feature rows and label count disagree");
    if (x.cols() == 0) throw DataError("train: zero-dimensional features");
    for (const double v : x.raw_values())
        if (!std::isfinite(v)) throw DataError("train: non-finite feature value");
    bool ham = false, spam = false;
    for (const Label l : y) (l == Label::spam ? spam : ham) = true;
    if (!ham || !spam)
        throw DataError("train: training set contains a single class");
}

}  // namespace detail

}  // namespace spamlab
