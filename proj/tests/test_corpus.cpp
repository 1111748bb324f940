#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "spamlab/corpus.hpp"
#include "spamlab/error.hpp"

using namespace spamlab;

namespace {

// Writes `content` to a unique file under the system temp dir.
std::filesystem::path write_csv(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "spamlab_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string error_text(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("load_csv: basic file") {
    const auto path = write_csv("basic.csv",
                                "Category,Message\n"
                                "ham,hello there\n"
                                "spam,win a prize\n");
    const Corpus c = load_csv(path);
    REQUIRE(c.messages.size() == 2);
    CHECK(c.n_ham == 1);
    CHECK(c.n_spam == 1);
    CHECK(c.messages[0].label == Label::ham);
    CHECK(c.messages[0].text == "hello there");
    CHECK(c.messages[1].label == Label::spam);
    CHECK(c.messages[1].text == "win a prize");
}

TEST_CASE("load_csv: quoting, commas, escaped quotes, embedded newlines") {
    const auto path = write_csv("quotes.csv",
                                "Category,Message\n"
                                "ham,\"hey, you\"\n"
                                "spam,\"claim your \"\"free\"\" prize\"\n"
                                "ham,\"line one\nline two\"\n");
    const Corpus c = load_csv(path);
    REQUIRE(c.messages.size() == 3);
    CHECK(c.messages[0].text == "hey, you");
    CHECK(c.messages[1].text == "claim your \"free\" prize");
    CHECK(c.messages[2].text == "line one\nline two");
}

TEST_CASE("load_csv: CRLF line endings and UTF-8 BOM") {
    const auto path = write_csv("crlf.csv",
                                "\xEF\xBB\xBF"
                                "Category,Message\r\n"
                                "ham,first\r\n"
                                "spam,second\r\n");
    const Corpus c = load_csv(path);
    REQUIRE(c.messages.size() == 2);
    CHECK(c.messages[0].text == "first");
    CHECK(c.messages[1].text == "second");
}

TEST_CASE("load_csv: header is case-insensitive and order-free; extras ignored") {
    const auto path = write_csv("header.csv",
                                "id,MESSAGE,extra,category\n"
                                "1,hello,x,HAM\n"
                                "2,prize,y, Spam \n");
    const Corpus c = load_csv(path);
    REQUIRE(c.messages.size() == 2);
    CHECK(c.messages[0].label == Label::ham);
    CHECK(c.messages[0].text == "hello");
    CHECK(c.messages[1].label == Label::spam);  // trimmed + lowercased
}

TEST_CASE("load_csv: blank lines are skipped") {
    const auto path = write_csv("blank.csv",
                                "Category,Message\n"
                                "\n"
                                "ham,one\n"
                                "\n"
                                "spam,two\n"
                                "\n");
    const Corpus c = load_csv(path);
    CHECK(c.messages.size() == 2);
}

TEST_CASE("load_csv: final record without trailing newline") {
    const auto path = write_csv("noeol.csv",
                                "Category,Message\n"
                                "ham,last one");
    const Corpus c = load_csv(path);
    REQUIRE(c.messages.size() == 1);
    CHECK(c.messages[0].text == "last one");
}

TEST_CASE("load_csv: errors carry 1-based record numbers") {
    SUBCASE("bad label") {
        const auto path = write_csv("badlabel.csv",
                                    "Category,Message\n"
                                    "ham,fine\n"
                                    "junk,oops\n");
        const std::string msg = error_text([&] { (void)load_csv(path); });
        CHECK(msg.find("record 3") != std::string::npos);
        CHECK(msg.find("junk") != std::string::npos);
        CHECK_THROWS_AS((void)load_csv(path), DataError);
    }
    SUBCASE("unterminated quote") {
        const auto path = write_csv("unterminated.csv",
                                    "Category,Message\n"
                                    "ham,\"oops\n");
        const std::string msg = error_text([&] { (void)load_csv(path); });
        CHECK(msg.find("quote") != std::string::npos);
        CHECK_THROWS_AS((void)load_csv(path), DataError);
    }
    SUBCASE("stray quote inside an unquoted field is kept literally") {
        const auto path = write_csv("strayquote.csv",
                                    "Category,Message\n"
                                    "ham,a\"b\n");
        const Corpus c = load_csv(path);
        REQUIRE(c.messages.size() == 1);
        CHECK(c.messages[0].text == "a\"b");
    }
    SUBCASE("missing message column in a record") {
        const auto path = write_csv("short.csv",
                                    "Category,Message\n"
                                    "ham\n");
        const std::string msg = error_text([&] { (void)load_csv(path); });
        CHECK(msg.find("record 2") != std::string::npos);
        CHECK_THROWS_AS((void)load_csv(path), DataError);
    }
}

TEST_CASE("load_csv: structural errors") {
    SUBCASE("missing file") {
        CHECK_THROWS_AS((void)load_csv("/nonexistent/nope.csv"), IoError);
    }
    SUBCASE("empty file") {
        const auto path = write_csv("empty.csv", "");
        CHECK_THROWS_AS((void)load_csv(path), DataError);
    }
    SUBCASE("header without the required columns") {
        const auto path = write_csv("badheader.csv", "a,b\nham,hi\n");
        CHECK_THROWS_AS((void)load_csv(path), DataError);
    }
    SUBCASE("header only, no records") {
        const auto path = write_csv("headeronly.csv", "Category,Message\n");
        CHECK_THROWS_AS((void)load_csv(path), DataError);
    }
}

namespace {

Corpus make_corpus(std::size_t n_ham, std::size_t n_spam) {
    Corpus c;
    for (std::size_t i = 0; i < n_ham; ++i)
        c.messages.push_back({Label::ham, "ham " + std::to_string(i)});
    for (std::size_t i = 0; i < n_spam; ++i)
        c.messages.push_back({Label::spam, "spam " + std::to_string(i)});
    c.n_ham = n_ham;
    c.n_spam = n_spam;
    return c;
}

}  // namespace

TEST_CASE("stratified_split: partition, stratification, rounding") {
    const Corpus c = make_corpus(70, 30);
    SplitSpec spec;
    spec.train_fraction = 0.8;
    spec.seed = 42;
    const DataSplit s = stratified_split(c, spec);

    CHECK(s.train_indices.size() == 80);  // 56 ham + 24 spam
    CHECK(s.test_indices.size() == 20);
    CHECK_FALSE(s.degenerate);
    CHECK(std::is_sorted(s.train_indices.begin(), s.train_indices.end()));
    CHECK(std::is_sorted(s.test_indices.begin(), s.test_indices.end()));

    std::set<std::size_t> all(s.train_indices.begin(), s.train_indices.end());
    all.insert(s.test_indices.begin(), s.test_indices.end());
    CHECK(all.size() == 100);
    CHECK(*all.rbegin() == 99);

    std::size_t train_ham = 0;
    for (const std::size_t i : s.train_indices)
        if (c.messages[i].label == Label::ham) ++train_ham;
    CHECK(train_ham == 56);

    // floor(f*n + 0.5): 0.75 of 10 -> 8 (round half up)
    const Corpus c2 = make_corpus(10, 10);
    SplitSpec spec2;
    spec2.train_fraction = 0.75;
    const DataSplit s2 = stratified_split(c2, spec2);
    CHECK(s2.train_indices.size() == 16);
}

TEST_CASE("stratified_split: deterministic in the seed") {
    const Corpus c = make_corpus(40, 20);
    SplitSpec a;
    a.seed = 7;
    SplitSpec b;
    b.seed = 7;
    SplitSpec other;
    other.seed = 8;
    CHECK(stratified_split(c, a).train_indices ==
          stratified_split(c, b).train_indices);
    CHECK(stratified_split(c, a).train_indices !=
          stratified_split(c, other).train_indices);
}

TEST_CASE("stratified_split: degenerate flag when a side loses a class") {
    // One spam message: floor(0.8*1+0.5) = 1 -> all spam lands in train.
    const Corpus c = make_corpus(10, 1);
    SplitSpec spec;
    const DataSplit s = stratified_split(c, spec);
    CHECK(s.degenerate);
}

TEST_CASE("stratified_split: fraction bounds are enforced") {
    const Corpus c = make_corpus(5, 5);
    SplitSpec bad;
    bad.train_fraction = 1.0;
    CHECK_THROWS_AS((void)stratified_split(c, bad), ConfigError);
    bad.train_fraction = 0.0;
    CHECK_THROWS_AS((void)stratified_split(c, bad), ConfigError);
}
