#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spamlab/textprep.hpp"

namespace spamlab {

// Term index fitted on training documents only. Terms are sorted
// lexicographically (byte order); every term seen at least once is kept
// (min_df = 1). doc_freq counts fitted documents containing the term.
struct Vocabulary {
    std::vector<std::string> terms;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::size_t> doc_freq;
    std::size_t n_docs = 0;

    std::size_t size() const { return terms.size(); }
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t lookup(const std::string& term) const {
        auto it = index.find(term);
        return it == index.end() ? npos : it->second;
    }
};

// Throws DataError when the documents contain no tokens at all.
Vocabulary build_vocabulary(std::span<const TokenizedDoc> docs);

// Strictly increasing indices, values non-zero.
struct SparseVector {
    std::vector<std::pair<std::size_t, double>> entries;
    std::size_t dim = 0;
};

// Raw term counts; out-of-vocabulary tokens are dropped.
SparseVector bow_vector(const TokenizedDoc& doc, const Vocabulary& vocab);

// idf(t) = ln((1 + N) / (1 + df(t))) + 1 over the fitted documents.
double idf(const Vocabulary& vocab, std::size_t term_index);

// tf-idf with raw-count tf, the idf above, then L2 row normalization
// (rows with no in-vocabulary tokens stay all-zero).
SparseVector tfidf_vector(const TokenizedDoc& doc, const Vocabulary& vocab);

// Read-only view of one feature row; exactly one storage is engaged:
// dense (`dense`, length dim) or sparse (parallel `indices`/`values`).
struct RowView {
    std::size_t dim = 0;
    bool dense_storage = true;
    std::span<const double> dense;
    std::span<const std::size_t> indices;
    std::span<const double> values;

    bool is_dense() const { return dense_storage; }
};

double dot(const RowView& a, std::span<const double> w);
double dot(const RowView& a, const RowView& b);
double l2_norm(const RowView& a);
// Single coordinate (binary search on sparse rows).
double row_value(const RowView& a, std::size_t index);

// Row-major feature matrix over a fixed dimensionality; either dense or
// CSR sparse. Rows are immutable once built.
class FeatureMatrix {
public:
    FeatureMatrix() = default;

    static FeatureMatrix dense(std::size_t rows, std::size_t cols,
                               std::vector<double> row_major);
    static FeatureMatrix sparse(std::size_t rows, std::size_t cols,
                                std::vector<std::size_t> indptr,
                                std::vector<std::size_t> indices,
                                std::vector<double> values);
    static FeatureMatrix from_sparse_rows(const std::vector<SparseVector>& rows,
                                          std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_dense() const { return dense_; }
    RowView row(std::size_t i) const;
    // Convenience element access (linear scan on sparse rows; for tests/IO).
    double value(std::size_t r, std::size_t c) const;

    const std::vector<double>& raw_values() const { return values_; }
    const std::vector<std::size_t>& raw_indptr() const { return indptr_; }
    const std::vector<std::size_t>& raw_indices() const { return indices_; }

private:
    bool dense_ = true;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
    std::vector<std::size_t> indptr_;   // sparse only, size rows+1
    std::vector<std::size_t> indices_;  // sparse only
};

enum class FeatureMethod { bow, tfidf };

const char* feature_method_name(FeatureMethod m);

struct FeaturizedSplit {
    Vocabulary vocab;
    FeatureMatrix train;
    FeatureMatrix test;
};

// Fits the vocabulary (and idf) on train_docs only, then encodes both sides.
FeaturizedSplit featurize_split(std::span<const TokenizedDoc> train_docs,
                                std::span<const TokenizedDoc> test_docs,
                                FeatureMethod method);

// Writes "term<TAB>index<TAB>doc_freq" lines in index order.
void dump_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path);

}  // namespace spamlab
