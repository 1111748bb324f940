#include "spamlab/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "spamlab/error.hpp"

namespace spamlab {

Vocabulary build_vocabulary(std::span<const TokenizedDoc> docs) {
    // std::map gives lexicographic order directly; values count doc_freq.
    std::map<std::string, std::size_t> df;
    std::vector<const std::string*> seen;
    for (const TokenizedDoc& doc : docs) {
        seen.clear();
        for (const std::string& tok : doc.tokens) {
            auto [it, inserted] = df.try_emplace(tok, 0);
            // Count each term once per document.
            if (std::find(seen.begin(), seen.end(), &it->first) == seen.end()) {
                ++it->second;
                seen.push_back(&it->first);
            }
        }
    }
    if (df.empty()) throw DataError("vocabulary is empty: no tokens in any document");

    Vocabulary vocab;
    vocab.n_docs = docs.size();
    vocab.terms.reserve(df.size());
    vocab.doc_freq.reserve(df.size());
    for (auto& [term, count] : df) {
        vocab.index.emplace(term, vocab.terms.size());
        vocab.terms.push_back(term);
        vocab.doc_freq.push_back(count);
    }
    return vocab;
}

SparseVector bow_vector(const TokenizedDoc& doc, const Vocabulary& vocab) {
    std::map<std::size_t, double> counts;
    for (const std::string& tok : doc.tokens) {
        const std::size_t i = vocab.lookup(tok);
        if (i != Vocabulary::npos) counts[i] += 1.0;
    }
    SparseVector v;
    v.dim = vocab.size();
    v.entries.assign(counts.begin(), counts.end());
    return v;
}

double idf(const Vocabulary& vocab, std::size_t term_index) {
    const double n = static_cast<double>(vocab.n_docs);
    const double df = static_cast<double>(vocab.doc_freq.at(term_index));
    return std::log((1.0 + n) / (1.0 + df)) + 1.0;
}

SparseVector tfidf_vector(const TokenizedDoc& doc, const Vocabulary& vocab) {
    SparseVector v = bow_vector(doc, vocab);
    double norm_sq = 0.0;
    for (auto& [term, value] : v.entries) {
        value *= idf(vocab, term);
        norm_sq += value * value;
    }
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& [term, value] : v.entries) value *= inv;
    }
    return v;
}

double dot(const RowView& a, std::span<const double> w) {
    double acc = 0.0;
    if (a.is_dense()) {
        for (std::size_t i = 0; i < a.dense.size(); ++i) acc += a.dense[i] * w[i];
    } else {
        for (std::size_t e = 0; e < a.indices.size(); ++e)
            acc += a.values[e] * w[a.indices[e]];
    }
    return acc;
}

double dot(const RowView& a, const RowView& b) {
    if (a.is_dense() && b.is_dense()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.dense.size(); ++i) acc += a.dense[i] * b.dense[i];
        return acc;
    }
    if (a.is_dense()) return dot(b, a.dense);
    if (b.is_dense()) return dot(a, b.dense);
    // sparse-sparse merge over sorted indices
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.indices.size() && j < b.indices.size()) {
        if (a.indices[i] < b.indices[j]) {
            ++i;
        } else if (a.indices[i] > b.indices[j]) {
            ++j;
        } else {
            acc += a.values[i] * b.values[j];
            ++i;
            ++j;
        }
    }
    return acc;
}

double row_value(const RowView& a, std::size_t index) {
    if (a.is_dense()) return a.dense[index];
    const auto it = std::lower_bound(a.indices.begin(), a.indices.end(), index);
    if (it == a.indices.end() || *it != index) return 0.0;
    return a.values[static_cast<std::size_t>(it - a.indices.begin())];
}

double l2_norm(const RowView& a) {
    double acc = 0.0;
    if (a.is_dense()) {
        for (const double v : a.dense) acc += v * v;
    } else {
        for (const double v : a.values) acc += v * v;
    }
    return std::sqrt(acc);
}

FeatureMatrix FeatureMatrix::dense(std::size_t rows, std::size_t cols,
                                   std::vector<double> row_major) {
    if (row_major.size() != rows * cols)
        throw DataError("dense matrix storage size does not match rows*cols");
    FeatureMatrix m;
    m.dense_ = true;
    m.rows_ = rows;
    m.cols_ = cols;
    m.values_ = std::move(row_major);
    return m;
}

FeatureMatrix FeatureMatrix::sparse(std::size_t rows, std::size_t cols,
                                    std::vector<std::size_t> indptr,
                                    std::vector<std::size_t> indices,
                                    std::vector<double> values) {
    if (indptr.size() != rows + 1 || indices.size() != values.size() ||
        indptr.front() != 0 || indptr.back() != indices.size())
        throw DataError("inconsistent CSR arrays");
    FeatureMatrix m;
    m.dense_ = false;
    m.rows_ = rows;
    m.cols_ = cols;
    m.indptr_ = std::move(indptr);
    m.indices_ = std::move(indices);
    m.values_ = std::move(values);
    return m;
}

FeatureMatrix FeatureMatrix::from_sparse_rows(const std::vector<SparseVector>& rows,
                                              std::size_t cols) {
    std::vector<std::size_t> indptr{0};
    std::vector<std::size_t> indices;
    std::vector<double> values;
    for (const SparseVector& r : rows) {
        for (const auto& [i, v] : r.entries) {
            if (i >= cols) throw DataError("sparse row index out of range");
            indices.push_back(i);
            values.push_back(v);
        }
        indptr.push_back(indices.size());
    }
    return sparse(rows.size(), cols, std::move(indptr), std::move(indices),
                  std::move(values));
}

RowView FeatureMatrix::row(std::size_t i) const {
    RowView v;
    v.dim = cols_;
    v.dense_storage = dense_;
    if (dense_) {
        v.dense = std::span<const double>(values_.data() + i * cols_, cols_);
    } else {
        const std::size_t b = indptr_[i], e = indptr_[i + 1];
        v.indices = std::span<const std::size_t>(indices_.data() + b, e - b);
        v.values = std::span<const double>(values_.data() + b, e - b);
    }
    return v;
}

double FeatureMatrix::value(std::size_t r, std::size_t c) const {
    if (dense_) return values_[r * cols_ + c];
    for (std::size_t e = indptr_[r]; e < indptr_[r + 1]; ++e)
        if (indices_[e] == c) return values_[e];
    return 0.0;
}

const char* feature_method_name(FeatureMethod m) {
    return m == FeatureMethod::bow ? "bow" : "tfidf";
}

FeaturizedSplit featurize_split(std::span<const TokenizedDoc> train_docs,
                                std::span<const TokenizedDoc> test_docs,
                                FeatureMethod method) {
    FeaturizedSplit out;
    out.vocab = build_vocabulary(train_docs);
    auto encode = [&](std::span<const TokenizedDoc> docs) {
        std::vector<SparseVector> rows;
        rows.reserve(docs.size());
        for (const TokenizedDoc& d : docs)
            rows.push_back(method == FeatureMethod::bow ? bow_vector(d, out.vocab)
                                                        : tfidf_vector(d, out.vocab));
        return FeatureMatrix::from_sparse_rows(rows, out.vocab.size());
    };
    out.train = encode(train_docs);
    out.test = encode(test_docs);
    return out;
}

void dump_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open vocabulary dump for writing: " + path.string());
    for (std::size_t i = 0; i < vocab.size(); ++i)
        out << vocab.terms[i] << '\t' << i << '\t' << vocab.doc_freq[i] << '\n';
    if (!out) throw IoError("failed writing vocabulary dump: " + path.string());
}

}  // namespace spamlab
