#include <doctest.h>

#include <string>
#include <vector>

#include "porter_reference.hpp"
#include "spamlab/error.hpp"
#include "spamlab/rng.hpp"
#include "spamlab/textprep.hpp"

using namespace spamlab;

TEST_CASE("tokenizer lowercases and splits on non-alphanumerics") {
    CHECK(normalize_tokenize("Hello, World!") ==
          std::vector<std::string>{"hello", "world"});
    CHECK(normalize_tokenize("WINNER!! Claim 2,000 NOW") ==
          std::vector<std::string>{"winner", "claim", "2", "000", "now"});
    CHECK(normalize_tokenize("don't") == std::vector<std::string>{"don", "t"});
    CHECK(normalize_tokenize("  \t\r\n ") == std::vector<std::string>{});
    CHECK(normalize_tokenize("") == std::vector<std::string>{});
    CHECK(normalize_tokenize("a1b2c3") == std::vector<std::string>{"a1b2c3"});
    // Non-ASCII bytes act as separators, never as token characters.
    CHECK(normalize_tokenize("caf\xc3\xa9 ole") ==
          std::vector<std::string>{"caf", "ole"});
}

TEST_CASE("stopword list parsing") {
    const StopwordList list = StopwordList::from_text("  The \nAND\n\nfoo\t\n");
    CHECK(list.size() == 3);
    CHECK(list.contains("the"));
    CHECK(list.contains("and"));
    CHECK(list.contains("foo"));
    CHECK_FALSE(list.contains("The"));  // lookups are post-normalization
    CHECK_FALSE(list.contains("bar"));
    CHECK_THROWS_AS((void)StopwordList::from_text("\n  \n"), DataError);
    CHECK_THROWS_AS((void)StopwordList::from_file("/nonexistent/stopwords.txt"),
                    IoError);
}

TEST_CASE("builtin stopword list") {
    const StopwordList& list = StopwordList::builtin();
    CHECK(list.size() == 179);
    for (const char* w : {"i", "me", "the", "and", "won", "don't", "t", "s",
                          "wouldn't", "itself", "having"})
        CHECK(list.contains(w));
    for (const char* w : {"free", "call", "prize", "home", "win"})
        CHECK_FALSE(list.contains(w));
}

TEST_CASE("stopword removal keeps order and non-matches") {
    const StopwordList list = StopwordList::from_text("the\nand");
    CHECK(remove_stopwords({"the", "cat", "and", "the", "dog"}, list) ==
          std::vector<std::string>{"cat", "dog"});
}

TEST_CASE("porter stemmer: frozen canonical outputs") {
    const std::pair<const char*, const char*> cases[] = {
        // plurals and -ed/-ing
        {"caresses", "caress"}, {"ponies", "poni"}, {"ties", "ti"},
        {"caress", "caress"}, {"cats", "cat"}, {"feed", "feed"},
        {"agreed", "agre"}, {"plastered", "plaster"}, {"bled", "bled"},
        {"motoring", "motor"}, {"sing", "sing"}, {"conflated", "conflat"},
        {"troubled", "troubl"}, {"sized", "size"}, {"hopping", "hop"},
        {"tanned", "tan"}, {"falling", "fall"}, {"hissing", "hiss"},
        {"fizzed", "fizz"}, {"failing", "fail"}, {"filing", "file"},
        {"humbled", "humbl"},
        // y -> i
        {"happy", "happi"}, {"sky", "sky"},
        // step 2 chains
        {"relational", "relat"}, {"conditional", "condit"},
        {"rational", "ration"}, {"valenci", "valenc"}, {"hesitanci", "hesit"},
        {"digitizer", "digit"}, {"conformabli", "conform"},
        {"radicalli", "radic"}, {"differentli", "differ"}, {"vileli", "vile"},
        {"analogousli", "analog"}, {"vietnamization", "vietnam"},
        {"predication", "predic"}, {"operator", "oper"},
        {"feudalism", "feudal"}, {"decisiveness", "decis"},
        {"hopefulness", "hope"}, {"callousness", "callous"},
        {"formaliti", "formal"}, {"sensitiviti", "sensit"},
        {"sensibiliti", "sensibl"},
        // step 3
        {"triplicate", "triplic"}, {"formative", "form"},
        {"formalize", "formal"}, {"electriciti", "electr"},
        {"electrical", "electr"}, {"hopeful", "hope"}, {"goodness", "good"},
        // step 4
        {"revival", "reviv"}, {"allowance", "allow"}, {"inference", "infer"},
        {"airliner", "airlin"}, {"gyroscopic", "gyroscop"},
        {"adjustable", "adjust"}, {"defensible", "defens"},
        {"irritant", "irrit"}, {"replacement", "replac"},
        {"adjustment", "adjust"}, {"dependent", "depend"},
        {"adoption", "adopt"}, {"communism", "commun"},
        {"activate", "activ"}, {"angulariti", "angular"},
        {"homologous", "homolog"}, {"effective", "effect"},
        {"bowdlerize", "bowdler"},
        // step 5
        {"probate", "probat"}, {"rate", "rate"}, {"cease", "ceas"},
        {"controll", "control"}, {"roll", "roll"},
    };
    for (const auto& [input, expected] : cases) {
        CAPTURE(input);
        CHECK(porter_stem(input) == expected);
    }
}

TEST_CASE("porter stemmer: short and digit-only tokens pass through") {
    CHECK(porter_stem("a") == "a");
    CHECK(porter_stem("is") == "is");
    CHECK(porter_stem("ok") == "ok");
    CHECK(porter_stem("2") == "2");
    CHECK(porter_stem("12345") == "12345");
    CHECK(porter_stem("2000") == "2000");
}

TEST_CASE("porter stemmer agrees with the reference transcription") {
    // Pseudo-words assembled from syllables and the full suffix catalogue
    // exercise every rule family, including digit-bearing tokens.
    const std::vector<std::string> stems = {
        "con",  "form", "rat",  "oper", "activ", "hop",  "fizz", "grat",
        "bl",   "tr",   "s",    "gener", "nation", "marvel", "vex",
        "plaster", "sk",  "happ", "carr", "7even", "t3st",
    };
    const std::vector<std::string> suffixes = {
        "",      "s",     "es",     "ies",    "sses",  "ed",     "ing",
        "eed",   "y",     "ational", "tional", "enci",  "anci",   "izer",
        "bli",   "alli",  "entli",  "eli",    "ousli", "ization", "ation",
        "ator",  "alism", "iveness", "fulness", "ousness", "aliti", "iviti",
        "biliti", "logi", "icate",  "ative",  "alize", "iciti",  "ical",
        "ful",   "ness",  "al",     "ance",   "ence",  "er",     "ic",
        "able",  "ible",  "ant",    "ement",  "ment",  "ent",    "ion",
        "ou",    "ism",   "ate",    "iti",    "ous",   "ive",    "ize",
        "e",     "ll",
    };
    std::size_t checked = 0;
    for (const std::string& stem : stems) {
        for (const std::string& suffix : suffixes) {
            const std::string word = stem + suffix;
            CAPTURE(word);
            REQUIRE(porter_stem(word) == porter_ref::stem(word));
            ++checked;
        }
    }
    CHECK(checked == stems.size() * suffixes.size());

    // Random letter soup (with occasional digits) for the odd corners.
    Rng rng(2024);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
    for (int trial = 0; trial < 4000; ++trial) {
        std::string word;
        const std::size_t len = 1 + rng.below(12);
        for (std::size_t i = 0; i < len; ++i) {
            if (rng.below(20) == 0)
                word += static_cast<char>('0' + rng.below(10));
            else
                word += alphabet[rng.below(26)];
        }
        CAPTURE(word);
        REQUIRE(porter_stem(word) == porter_ref::stem(word));
    }
}

TEST_CASE("preprocess removes stopwords before stemming") {
    const TokenizedDoc doc =
        preprocess("I won't be having dinner, call me NOW!!", StopwordList::builtin());
    // "won", "t", "having", etc. match the list on their surface forms;
    // "dinner" and "call" survive and are stemmed.
    CHECK(doc.tokens == std::vector<std::string>{"dinner", "call"});

    // "haves" is not a stopword even though its stem matches "have"-family
    // entries only pre-stemming.
    const TokenizedDoc doc2 = preprocess("haves", StopwordList::builtin());
    CHECK(doc2.tokens == std::vector<std::string>{"have"});
}

TEST_CASE("preprocess of an all-stopword message is empty") {
    const TokenizedDoc doc = preprocess("I am so very... ME!", StopwordList::builtin());
    CHECK(doc.tokens.empty());
}
