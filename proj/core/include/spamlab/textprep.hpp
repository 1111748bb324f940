#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace spamlab {

// A preprocessed message: lowercase ASCII-alphanumeric tokens, stopwords
// removed, stemmed. May be empty (e.g. a message made only of stopwords).
struct TokenizedDoc {
    std::vector<std::string> tokens;
};

// Case-insensitive stopword membership. The builtin list is the classic
// 179-entry English list, also shipped as data/stopwords_en.txt.
class StopwordList {
public:
    // Parses one word per line; surrounding whitespace trimmed, entries
    // lowercased, empty lines skipped. Throws DataError if nothing remains.
    static StopwordList from_text(std::string_view text);
    // Throws IoError if the file cannot be read.
    static StopwordList from_file(const std::filesystem::path& path);
    // The compiled-in default list (identical to data/stopwords_en.txt).
    static const StopwordList& builtin();

    bool contains(std::string_view word) const;
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

// Lowercases ASCII letters and splits on every byte outside [a-z0-9].
// Tokens are maximal runs of lowercase ASCII alphanumerics; never empty.
std::vector<std::string> normalize_tokenize(std::string_view text);

// Keeps input order; removes exact (case-sensitive, post-normalization)
// stopword matches.
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopwordList& stopwords);

// Porter stemmer, classic English variant (with the reference
// implementation's two published departures: *bli -> *ble, *logi -> *log).
// Expects a lowercase token; tokens of length <= 2 and tokens consisting
// solely of digits are returned unchanged.
std::string porter_stem(std::string token);

// tokenize -> remove stopwords -> stem, in that order (stopwords are matched
// on surface forms, before stemming).
TokenizedDoc preprocess(std::string_view text, const StopwordList& stopwords);

}  // namespace spamlab
