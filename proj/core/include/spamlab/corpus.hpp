#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace spamlab {

enum class Label : std::uint8_t { ham = 0, spam = 1 };

inline const char* label_name(Label l) { return l == Label::spam ? "spam" : "ham"; }

struct RawMessage {
    Label label;
    std::string text;
};

struct Corpus {
    std::vector<RawMessage> messages;
    std::size_t n_ham = 0;
    std::size_t n_spam = 0;
};

// Loads an RFC-4180 CSV with a header row. The label and text columns are
// located by case-insensitive header name ("Category", "Message"); extra
// columns are ignored. Labels are trimmed and lowercased and must be
// "ham" or "spam". Quoted fields may contain commas, escaped quotes ("")
// and newlines. A UTF-8 BOM is tolerated. Message text is kept verbatim.
// Throws IoError for unreadable files and DataError for malformed content
// (with the 1-based record number, header = record 1).
Corpus load_csv(const std::filesystem::path& path);

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 42;
};

// Index partition of a corpus; both sides sorted ascending. `degenerate`
// warns that some class is absent from one side (training on such a split
// will fail later with SingleClass errors; splitting itself succeeds).
struct DataSplit {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    bool degenerate = false;
};

// Stratified split: within each class (ham first, then spam) indices are
// shuffled by one Rng seeded with spec.seed and the first
// floor(fraction * n_class + 0.5) go to train (round half up). Deterministic
// for a fixed (corpus, spec). train_fraction must lie strictly in (0, 1).
DataSplit stratified_split(const Corpus& corpus, const SplitSpec& spec);

}  // namespace spamlab
