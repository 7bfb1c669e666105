#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ctxspell/error_synth.hpp"
#include "support/oracles.hpp"

using namespace ctxspell;

namespace {
const std::string fixtures = CTXSPELL_FIXTURE_DIR;
lexicon toy() { return load_lexicon(fixtures + "/lexicon_toy.tsv"); }

corpus toy_corpus() {
    corpus c;
    c.documents.push_back(make_document(
        "The boss left the dogs in the park. He saw the big dogs now.", "d1", ""));
    c.documents.push_back(make_document("Wow, the boys ran in the park now.", "d2", ""));
    return c;
}
} // namespace

TEST_CASE("rate zero injects nothing and keeps the corpus identical") {
    lexicon lex = toy();
    corpus c = toy_corpus();
    error_run run = inject_errors(c, lex, 0.0, 42);
    CHECK(run.errors.empty());
    REQUIRE(run.corrupted.documents.size() == c.documents.size());
    for (std::size_t d = 0; d < c.documents.size(); ++d)
        CHECK(detokenize(run.corrupted.documents[d]) == detokenize(c.documents[d]));
}

TEST_CASE("the same seed reproduces the same run") {
    lexicon lex = toy();
    corpus c = toy_corpus();
    error_run a = inject_errors(c, lex, 0.5, 1234);
    error_run b = inject_errors(c, lex, 0.5, 1234);
    REQUIRE(a.errors.size() == b.errors.size());
    for (std::size_t i = 0; i < a.errors.size(); ++i) {
        CHECK(a.errors[i].at == b.errors[i].at);
        CHECK(a.errors[i].corrupted == b.errors[i].corrupted);
        CHECK(a.errors[i].op == b.errors[i].op);
    }
    error_run other = inject_errors(c, lex, 0.5, 1235);
    bool identical = other.errors.size() == a.errors.size();
    if (identical)
        for (std::size_t i = 0; i < a.errors.size(); ++i)
            identical = identical && a.errors[i].at == other.errors[i].at &&
                        a.errors[i].corrupted == other.errors[i].corrupted;
    CHECK_FALSE(identical);
}

TEST_CASE("corruptions are single Damerau edits that change the surface") {
    lexicon lex = toy();
    corpus c = toy_corpus();
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        error_run run = inject_errors(c, lex, 0.6, seed);
        for (const auto& e : run.errors) {
            CHECK(e.corrupted != e.original);
            CHECK(oracle::osa_distance(e.original, e.corrupted) == 1);
            CHECK(matches_word_pattern(e.corrupted));
            CHECK(e.became_real_word == lex.is_known(e.corrupted));
            const document* doc = run.corrupted.find(e.at.doc_id);
            REQUIRE(doc != nullptr);
            const token* t = doc->find(e.at.sent, e.at.tok);
            REQUIRE(t != nullptr);
            CHECK(t->surface == e.corrupted);
        }
    }
}

TEST_CASE("tokens unknown to the lexicon are untouched") {
    lexicon lex = toy();
    corpus c;
    c.documents.push_back(
        make_document("the zzyx boss . qqfoo dogs 123 !", "d", ""));
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        error_run run = inject_errors(c, lex, 0.9, seed);
        const document& d = run.corrupted.documents[0];
        // surfaces at the non-word/number positions must be byte-identical
        CHECK(d.tokens[1].surface == "zzyx");
        CHECK(d.tokens[4].surface == "qqfoo");
        CHECK(d.tokens[6].surface == "123");
        CHECK(d.tokens[3].surface == ".");
    }
}

TEST_CASE("error counts follow the configured rate") {
    lexicon lex = toy();
    // 40 eligible words per doc pair repeated: build a bigger corpus
    corpus c;
    std::string text;
    for (int i = 0; i < 50; ++i) text += "the boss left the dogs in the park now . ";
    c.documents.push_back(make_document(text, "big", ""));
    const double rate = 0.05;
    const double eligible = 450.0; // 9 known words per repetition

    double total = 0;
    const int runs = 40;
    for (std::uint64_t seed = 1; seed <= runs; ++seed)
        total += static_cast<double>(inject_errors(c, lex, rate, seed).errors.size());
    double mean = total / runs;
    // Chebyshev-style bound: the mean of `runs` binomial draws
    double sigma = oracle::binomial_sigma(eligible, rate) / std::sqrt(runs);
    CHECK(std::abs(mean - eligible * rate) <= 6.0 * sigma);
}

TEST_CASE("classify_errors partitions by dictionary membership") {
    lexicon lex = toy();

    error_run run;
    run.errors.push_back({{"d", 0, 0}, "boss", "bos", damerau_op::deletion, false});
    run.errors.push_back({{"d", 0, 1}, "dogs", "dog", damerau_op::deletion, true});
    run.errors.push_back({{"d", 0, 2}, "left", "lefq", damerau_op::substitution, false});
    run.errors.push_back({{"d", 0, 3}, "saw", "sawe", damerau_op::insertion, false});
    run.errors.push_back({{"d", 0, 4}, "the", "he", damerau_op::deletion, true});
    auto [real, nonword] = classify_errors(run, lex);
    CHECK(real == 2);
    CHECK(nonword == 3);
    CHECK(real + nonword == static_cast<int>(run.errors.size()));

    error_run empty;
    auto [r0, n0] = classify_errors(empty, lex);
    CHECK(r0 == 0);
    CHECK(n0 == 0);
}

TEST_CASE("ledger writing and parsing round-trip") {
    error_run run;
    run.errors.push_back({{"doc-a", 2, 7}, "boss", "bosse", damerau_op::insertion, false});
    run.errors.push_back({{"doc-b", 0, 1}, "the", "hte", damerau_op::transposition, false});

    std::ostringstream os;
    write_ledger(os, run.errors);
    std::istringstream is(os.str());
    auto parsed = read_ledger(is);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].at == token_coord{"doc-a", 2, 7});
    CHECK(parsed[0].original == "boss");
    CHECK(parsed[0].corrupted == "bosse");
    CHECK(parsed[0].op == damerau_op::insertion);
    CHECK(parsed[1].op == damerau_op::transposition);

    std::istringstream bad("doc\t0\t0\tboss\tbos\tfrobnicate\n");
    CHECK_THROWS_AS(read_ledger(bad), config_error);
}

TEST_CASE("invalid rates are rejected") {
    lexicon lex = toy();
    corpus c = toy_corpus();
    CHECK_THROWS_AS(inject_errors(c, lex, 1.0, 1), config_error);
    CHECK_THROWS_AS(inject_errors(c, lex, -0.1, 1), config_error);
    corpus empty;
    CHECK_THROWS_AS(inject_errors(empty, lex, 0.05, 1), config_error);
}
