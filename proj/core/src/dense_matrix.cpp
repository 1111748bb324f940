#include "spamlab/dense_matrix.hpp"

#include <cmath>

#include "spamlab/error.hpp"

namespace spamlab {

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
    DenseMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
    m.values_.reserve(m.rows_ * m.cols_);
    for (const auto& r : rows) {
        if (r.size() != m.cols_) throw DataError("ragged initializer for DenseMatrix");
        m.values_.insert(m.values_.end(), r.begin(), r.end());
    }
    return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

bool DenseMatrix::all_finite() const {
    for (const double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

double DenseMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (const double v : values_) acc += v * v;
    return std::sqrt(acc);
}

double DenseMatrix::max_asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            worst = std::max(worst, std::abs(at(i, j) - at(j, i)));
    return worst;
}

}  // namespace spamlab
