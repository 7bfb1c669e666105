#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "ctxspell/pipeline.hpp"

using namespace ctxspell;
namespace fs = std::filesystem;

namespace {
const std::string fixtures = CTXSPELL_FIXTURE_DIR;

struct sandbox {
    fs::path dir;
    explicit sandbox(const std::string& name) {
        dir = fs::current_path() / ("tmp_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    std::string path(const std::string& rel) const { return (dir / rel).string(); }
    void write(const std::string& rel, const std::string& text) const {
        fs::create_directories((dir / rel).parent_path());
        std::ofstream out(dir / rel, std::ios::binary);
        out << text;
    }
    std::string read(const std::string& rel) const { return read_file(path(rel)); }
};

run_config mini_config(const sandbox& sb) {
    run_config cfg;
    cfg.lexicon_path = fixtures + "/lexicon_toy.tsv";
    cfg.rule_path = fixtures + "/toy.rules";
    cfg.corpus_globs["train"] = {sb.path("corpus/train_*.txt")};
    cfg.corpus_globs["test"] = {sb.path("corpus/test_*.txt")};
    cfg.error_rate = 0.3;
    cfg.seeds = {1, 2, 3, 4};
    cfg.combinations = {"CG1+DF2", "CG1+DF2+H2"};
    cfg.output_dir = sb.path("out");
    cfg.report_format = "csv";
    return cfg;
}

void write_mini_corpus(const sandbox& sb) {
    sb.write("corpus/train_a.txt",
             "The boss left the dogs in the park. He saw the big dogs now. "
             "The boss saw the boys. Wow, the boys ran in the park now.\n");
    sb.write("corpus/train_b.txt",
             "He walked in the park now. The dogs saw the boss. "
             "The boys are happy now. The big dog ran.\n");
    sb.write("corpus/test_a.txt",
             "The boys saw the big boss now. The dog left the park. "
             "He ran in the park. Wow, the dogs are happy.\n");
    sb.write("corpus/test_b.txt",
             "The boss walked now. He saw the dogs in the park. "
             "The big boys left now. The dog saw the boss.\n");
}
} // namespace

TEST_CASE("glob matching") {
    using pipeline::glob_match;
    CHECK(glob_match("*.txt", "a.txt"));
    CHECK(glob_match("train_*.txt", "train_07.txt"));
    CHECK_FALSE(glob_match("train_*.txt", "test_07.txt"));
    CHECK(glob_match("doc_??.txt", "doc_01.txt"));
    CHECK_FALSE(glob_match("doc_??.txt", "doc_001.txt"));
    CHECK(glob_match("*", "anything"));
}

TEST_CASE("ingest writes canonical dumps and reports totals") {
    sandbox sb("ingest");
    write_mini_corpus(sb);
    run_config cfg = mini_config(sb);

    auto summaries = pipeline::run_ingest(cfg);
    REQUIRE(summaries.size() == 2);
    CHECK(summaries[0].split == "train");
    CHECK(summaries[0].documents == 2);
    CHECK(summaries[0].tokens > 0);
    CHECK(fs::exists(sb.path("out/corpus_train.dump.tsv")));
    CHECK(fs::exists(sb.path("out/corpus_test.dump.tsv")));

    // the dump loads back with the same token count
    corpus c = read_corpus_dump_file(sb.path("out/corpus_train.dump.tsv"));
    CHECK(c.token_count() == summaries[0].tokens);
}

TEST_CASE("ingest with a glob matching nothing is a config error") {
    sandbox sb("ingest_bad");
    run_config cfg = mini_config(sb);
    CHECK_THROWS_AS(pipeline::run_ingest(cfg), config_error);
}

TEST_CASE("gen-errors is deterministic per seed") {
    sandbox sb("gen");
    write_mini_corpus(sb);
    run_config cfg = mini_config(sb);
    cfg.seeds = {7};

    auto first = pipeline::run_gen_errors(cfg);
    REQUIRE(first.size() == 2); // train and test
    std::string ledger1 = sb.read("out/errors_train_seed7.tsv");
    std::string dump1 = sb.read("out/corrupt_train_seed7.dump.tsv");

    auto second = pipeline::run_gen_errors(cfg);
    CHECK(sb.read("out/errors_train_seed7.tsv") == ledger1);
    CHECK(sb.read("out/corrupt_train_seed7.dump.tsv") == dump1);
    CHECK_FALSE(ledger1.empty());
}

TEST_CASE("gen-errors error count tracks the rate on a 100-word document") {
    sandbox sb("gen_rate");
    std::string text;
    for (int i = 0; i < 10; ++i)
        text += "the boss left the dogs in the park now . "; // 9 eligible words each
    sb.write("corpus/train_a.txt", text);
    run_config cfg = mini_config(sb);
    cfg.corpus_globs.erase("test");
    cfg.error_rate = 0.5;
    cfg.seeds = {11};

    auto summaries = pipeline::run_gen_errors(cfg);
    REQUIRE(summaries.size() == 1);
    // Binomial(90, 0.5): sigma ~ 4.74, 4 sigma ~ 19
    double mean = 45.0, four_sigma = 4.0 * std::sqrt(90 * 0.25);
    CHECK(std::abs(static_cast<double>(summaries[0].errors) - mean) <= four_sigma);
}

TEST_CASE("correct resolves the worked example via CG1+DF2") {
    sandbox sb("correct");
    run_config cfg = mini_config(sb);
    auto result =
        pipeline::run_correct(cfg, fixtures + "/correct_sample.txt", "CG1+DF2");
    CHECK(result.corrected_text == "The boss left. Wow, our boss are in the park.\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].error_surface == "bos");
    CHECK(result.records[0].answered);
    CHECK(result.records[0].selected == std::vector<std::string>{"boss"});
}

TEST_CASE("correct leaves text without non-words byte-identical") {
    sandbox sb("correct_id");
    sb.write("clean.txt", "The boss left the dogs in the park now.\nWow!  He ran.\n");
    run_config cfg = mini_config(sb);
    auto result = pipeline::run_correct(cfg, sb.path("clean.txt"), "CG1+DF2");
    CHECK(result.corrected_text == sb.read("clean.txt"));
    CHECK(result.records.empty());
}

TEST_CASE("correct annotates a zero-proposal non-word") {
    sandbox sb("correct_zero");
    sb.write("input.txt", "qqq in the park.\n");
    run_config cfg = mini_config(sb);
    auto result = pipeline::run_correct(cfg, sb.path("input.txt"), "CG1+DF2");
    CHECK(result.corrected_text == "[[qqq|]] in the park.\n");
    REQUIRE(result.records.size() == 1);
    CHECK_FALSE(result.records[0].answered);
}

TEST_CASE("correct capitalises a replacement for an uppercase-initial error") {
    sandbox sb("correct_case");
    sb.write("input.txt", "Thw boss left the park.\n");
    run_config cfg = mini_config(sb);
    auto result = pipeline::run_correct(cfg, sb.path("input.txt"), "CG1+DF2");
    // "Thw" -> sole proposal "the"; the replacement keeps the sentence casing
    CHECK(result.corrected_text == "The boss left the park.\n");
}

TEST_CASE("evaluate writes one report per split and scope") {
    sandbox sb("eval");
    write_mini_corpus(sb);
    run_config cfg = mini_config(sb);
    pipeline::run_gen_errors(cfg);

    auto summary = pipeline::run_evaluate(cfg);
    CHECK(fs::exists(sb.path("out/report_train_all.csv")));
    CHECK(fs::exists(sb.path("out/report_train_multi.csv")));
    CHECK(fs::exists(sb.path("out/report_test_all.csv")));
    CHECK(fs::exists(sb.path("out/report_test_multi.csv")));
    CHECK(summary.report_files.size() == 4);

    std::string csv = sb.read("out/report_train_all.csv");
    CHECK(csv.find("random baseline,") != std::string::npos);
    CHECK(csv.find("CG1+DF2,") != std::string::npos);
    CHECK(csv.find("CG1+DF2+H2,") != std::string::npos);
    CHECK(csv.find("label,coverage,precision,avg_proposals") != std::string::npos);
}

TEST_CASE("evaluate without gen-errors output names the missing seed") {
    sandbox sb("eval_missing");
    write_mini_corpus(sb);
    run_config cfg = mini_config(sb);
    pipeline::run_gen_errors(cfg);
    fs::remove(sb.path("out/errors_train_seed3.tsv"));
    try {
        pipeline::run_evaluate(cfg);
        FAIL("expected error");
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("seed 3") != std::string::npos);
    }
}

TEST_CASE("search-weights emits the grid and validates the top labels") {
    sandbox sb("search");
    write_mini_corpus(sb);
    run_config cfg = mini_config(sb);
    pipeline::run_gen_errors(cfg);

    auto summary = pipeline::run_search_weights(cfg);
    CHECK(summary.top_labels.size() == 3);
    CHECK(fs::exists(summary.search_file));
    CHECK(fs::exists(summary.validation_file));
    CHECK(summary.validation_labels.size() == 3);

    // the top label round-trips through the parser
    combination top = parse_combination(summary.top_labels[0]);
    CHECK(top.label() == summary.top_labels[0]);

    // 4 guessers x {0,1,2} minus all-zero, with and without H2
    std::string csv = read_file(summary.search_file);
    std::size_t rows = 0;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#' && line.rfind("label,", 0) != 0) ++rows;
    CHECK(rows == 160);

    // deterministic: a second run produces byte-identical files
    std::string before = read_file(summary.search_file);
    auto again = pipeline::run_search_weights(cfg);
    CHECK(read_file(again.search_file) == before);
}

TEST_CASE("evaluate scores the pre-corrupted real split from dumps and ledger") {
    sandbox sb("eval_real");
    run_config cfg;
    cfg.lexicon_path = fixtures + "/lexicon_en.tsv";
    cfg.rule_path = fixtures + "/english.rules";
    cfg.corpus_globs["real"] = {fixtures + "/corpus/real/real_*.dump.tsv"};
    cfg.real_ledger_path = fixtures + "/corpus/real/real.ledger.tsv";
    cfg.combinations = {"CG1+DF2", "CG1+DF1+BF1"};
    cfg.output_dir = sb.path("out");
    cfg.report_format = "csv";

    auto summary = pipeline::run_evaluate(cfg);
    REQUIRE(fs::exists(sb.path("out/report_real_all.csv")));
    std::string csv = sb.read("out/report_real_all.csv");
    CHECK(csv.find("random baseline,100.00") != std::string::npos);
    CHECK(csv.find("CG1+DF2,") != std::string::npos);

    // without the ledger path the real split cannot be scored
    cfg.real_ledger_path.clear();
    CHECK_THROWS_AS(pipeline::run_evaluate(cfg), config_error);
}

TEST_CASE("correction records use the verdict dump line format") {
    sandbox sb("anno");
    run_config cfg = mini_config(sb);
    auto result = pipeline::run_correct(cfg, fixtures + "/correct_sample.txt", "CG1+DF2");
    std::ostringstream os;
    pipeline::write_correction_records(os, result, "CG1+DF2");
    // "bos" is token 3 of sentence 1 ("Wow , our bos are in the park .")
    CHECK(os.str() == "correct_sample:1:3\tCG1+DF2\ttrue\tboss\n");
}

TEST_CASE("config loading applies defaults and validates") {
    sandbox sb("config");
    sb.write("cfg.json", R"({
        "lexicon": "lex.tsv",
        "corpus": {"train": ["a/*.txt"]},
        "error_rate": 0.05,
        "combinations": ["CG1+DF2"]
    })");
    run_config cfg = load_config(sb.path("cfg.json"));
    CHECK(cfg.lexicon_path == "lex.tsv");
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(cfg.report_format == "table");
    CHECK(cfg.output_dir == "out");

    sb.write("bad_rate.json", R"({"error_rate": 1.5})");
    CHECK_THROWS_AS(load_config(sb.path("bad_rate.json")), config_error);
    sb.write("bad_split.json", R"({"corpus": {"validation": ["x"]}})");
    CHECK_THROWS_AS(load_config(sb.path("bad_split.json")), config_error);
    CHECK_THROWS_AS(load_config(sb.path("missing.json")), config_error);
}
