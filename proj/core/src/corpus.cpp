#include "spamlab/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spamlab/error.hpp"
#include "spamlab/rng.hpp"

namespace spamlab {

namespace {

std::string lower_trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out(s.substr(b, e - b));
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                      : static_cast<char>(c);
    });
    return out;
}

struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t number = 0;  // 1-based, header = 1
};

// RFC-4180 state machine over the whole buffer. Quoted fields may contain
// commas, "" escapes and newlines; lone CR outside quotes also ends a record.
std::vector<CsvRecord> parse_csv(std::string_view buf) {
    std::vector<CsvRecord> records;
    std::vector<std::string> fields;
    std::string field;
    bool field_was_quoted = false;
    std::size_t record_no = 1;

    enum class St { field_start, in_field, in_quotes, after_quote };
    St st = St::field_start;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        st = St::field_start;
    };
    auto end_record = [&] {
        const bool blank =
            fields.empty() && field.empty() && !field_was_quoted && st == St::field_start;
        if (!blank) {
            end_field();
            records.push_back({std::move(fields), record_no});
            fields.clear();
        }
        ++record_no;
        st = St::field_start;
    };

    for (std::size_t i = 0; i < buf.size(); ++i) {
        const char c = buf[i];
        switch (st) {
            case St::field_start:
                if (c == '"') {
                    st = St::in_quotes;
                    field_was_quoted = true;
                } else if (c == ',') {
                    end_field();
                } else if (c == '\n') {
                    end_record();
                } else if (c == '\r') {
                    if (i + 1 < buf.size() && buf[i + 1] == '\n') ++i;
                    end_record();
                } else {
                    field.push_back(c);
                    st = St::in_field;
                }
                break;
            case St::in_field:
                if (c == ',') {
                    end_field();
                } else if (c == '\n') {
                    end_record();
                } else if (c == '\r') {
                    if (i + 1 < buf.size() && buf[i + 1] == '\n') ++i;
                    end_record();
                } else {
                    field.push_back(c);
                }
                break;
            case St::in_quotes:
                if (c == '"') {
                    st = St::after_quote;
                } else {
                    field.push_back(c);
                }
                break;
            case St::after_quote:
                if (c == '"') {
                    field.push_back('"');
                    st = St::in_quotes;
                } else if (c == ',') {
                    end_field();
                } else if (c == '\n') {
                    end_record();
                } else if (c == '\r') {
                    if (i + 1 < buf.size() && buf[i + 1] == '\n') ++i;
                    end_record();
                } else {
                    throw DataError("record " + std::to_string(record_no) +
                                    ": unexpected character after closing quote");
                }
                break;
        }
    }
    if (st == St::in_quotes)
        throw DataError("record " + std::to_string(record_no) +
                        ": unterminated quoted field");
    if (!fields.empty() || !field.empty() || field_was_quoted || st != St::field_start)
        end_record();
    return records;
}

}  // namespace

Corpus load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path.string());
    std::ostringstream raw;
    raw << in.rdbuf();
    std::string buf = std::move(raw).str();

    std::string_view view = buf;
    if (view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);  // UTF-8 BOM

    const std::vector<CsvRecord> records = parse_csv(view);
    if (records.empty()) throw DataError("corpus file has no header row");

    const CsvRecord& header = records.front();
    std::size_t label_col = header.fields.size();
    std::size_t text_col = header.fields.size();
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
        const std::string name = lower_trim(header.fields[i]);
        if (name == "category" && label_col == header.fields.size()) label_col = i;
        if (name == "message" && text_col == header.fields.size()) text_col = i;
    }
    if (label_col == header.fields.size() || text_col == header.fields.size()) {
        std::string found;
        for (const auto& f : header.fields) {
            if (!found.empty()) found += ", ";
            found += '\'' + f + '\'';
        }
        throw DataError(
            "header must contain 'Category' and 'Message' columns; found: " + found);
    }

    Corpus corpus;
    const std::size_t need = std::max(label_col, text_col) + 1;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const CsvRecord& rec = records[r];
        if (rec.fields.size() < need)
            throw DataError("record " + std::to_string(rec.number) + " has " +
                            std::to_string(rec.fields.size()) +
                            " fields, expected at least " + std::to_string(need));
        const std::string label = lower_trim(rec.fields[label_col]);
        RawMessage msg;
        if (label == "ham") {
            msg.label = Label::ham;
            ++corpus.n_ham;
        } else if (label == "spam") {
            msg.label = Label::spam;
            ++corpus.n_spam;
        } else {
            throw DataError("record " + std::to_string(rec.number) + ": bad label '" +
                            rec.fields[label_col] + "'");
        }
        msg.text = rec.fields[text_col];
        corpus.messages.push_back(std::move(msg));
    }
    if (corpus.messages.empty()) throw DataError("corpus has no data rows");
    return corpus;
}

DataSplit stratified_split(const Corpus& corpus, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0) || !(spec.train_fraction < 1.0))
        throw ConfigError("train_fraction must lie strictly in (0, 1), got " +
                          std::to_string(spec.train_fraction));
    if (corpus.messages.empty()) throw DataError("cannot split an empty corpus");

    Rng rng(spec.seed);
    DataSplit split;
    for (const Label cls : {Label::ham, Label::spam}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < corpus.messages.size(); ++i)
            if (corpus.messages[i].label == cls) idx.push_back(i);
        if (idx.empty()) continue;
        rng.shuffle(idx);
        const double want = spec.train_fraction * static_cast<double>(idx.size());
        const auto n_train = static_cast<std::size_t>(std::floor(want + 0.5));
        split.train_indices.insert(split.train_indices.end(), idx.begin(),
                                   idx.begin() + static_cast<std::ptrdiff_t>(n_train));
        split.test_indices.insert(split.test_indices.end(),
                                  idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                                  idx.end());
    }
    std::sort(split.train_indices.begin(), split.train_indices.end());
    std::sort(split.test_indices.begin(), split.test_indices.end());

    auto has_class = [&](const std::vector<std::size_t>& part, Label cls) {
        return std::any_of(part.begin(), part.end(), [&](std::size_t i) {
            return corpus.messages[i].label == cls;
        });
    };
    split.degenerate = split.train_indices.empty() || split.test_indices.empty() ||
                       !has_class(split.train_indices, Label::ham) ||
                       !has_class(split.train_indices, Label::spam) ||
                       !has_class(split.test_indices, Label::ham) ||
                       !has_class(split.test_indices, Label::spam);
    return split;
}

}  // namespace spamlab
