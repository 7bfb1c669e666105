// Command-line front end: ingest / gen-errors / correct / evaluate /
// search-weights over a JSON experiment config. Exit codes: 0 success,
// 1 pipeline failure, 2 usage or configuration error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctxspell/ctxspell.hpp"

namespace {

struct cli_options {
    std::string config_path;
    std::vector<std::uint64_t> seeds;
    std::optional<double> rate;
    std::vector<std::string> combinations;
    std::string scope = "all";
    std::optional<std::string> format;
    std::optional<std::string> out_dir;
    std::string input_path; // correct
};

ctxspell::run_config resolve_config(const cli_options& opt) {
    std::string path = opt.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("CTXSPELL_CONFIG")) path = env;
    }
    if (path.empty())
        throw ctxspell::config_error("no config given (use --config or CTXSPELL_CONFIG)");
    ctxspell::run_config cfg = ctxspell::load_config(path);
    if (!opt.seeds.empty()) cfg.seeds = opt.seeds;
    if (opt.rate) cfg.error_rate = *opt.rate;
    if (!opt.combinations.empty()) cfg.combinations = opt.combinations;
    if (opt.format) cfg.report_format = *opt.format;
    if (opt.out_dir) cfg.output_dir = *opt.out_dir;
    if (!(cfg.error_rate > 0.0 && cfg.error_rate < 1.0))
        throw ctxspell::config_error("error rate must be in (0, 1)");
    return cfg;
}

void add_common_flags(CLI::App* cmd, cli_options& opt) {
    cmd->add_option("--config,-c", opt.config_path, "experiment config (JSON)");
    cmd->add_option("--seed", opt.seeds, "override the seed list (repeatable)");
    cmd->add_option("--rate", opt.rate, "override the error rate");
    cmd->add_option("--combination", opt.combinations, "combination label, e.g. CG1+DF2+H2 (repeatable)");
    cmd->add_option("--scope", opt.scope, "report scope: all|multi|h2")
        ->check(CLI::IsMember({"all", "multi", "h2"}));
    cmd->add_option("--format", opt.format, "report format: table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd->add_option("--out", opt.out_dir, "output directory");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"context-sensitive spelling correction toolkit"};
    app.require_subcommand(1);
    cli_options opt;

    CLI::App* ingest = app.add_subcommand("ingest", "tokenize corpora and write canonical dumps");
    add_common_flags(ingest, opt);

    CLI::App* gen = app.add_subcommand("gen-errors", "corrupt the corpora once per seed");
    add_common_flags(gen, opt);

    CLI::App* correct = app.add_subcommand("correct", "correct the non-words in a text file");
    add_common_flags(correct, opt);
    correct->add_option("input", opt.input_path, "text file to correct")->required();

    CLI::App* evaluate = app.add_subcommand("evaluate", "score techniques against the gold ledgers");
    add_common_flags(evaluate, opt);

    CLI::App* search = app.add_subcommand("search-weights", "grid-search voting weights on the train half");
    add_common_flags(search, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ctxspell::run_config cfg = resolve_config(opt);

        if (ingest->parsed()) {
            for (const auto& s : ctxspell::pipeline::run_ingest(cfg))
                std::cout << s.split << ": " << s.documents << " documents, " << s.sentences
                          << " sentences, " << s.tokens << " tokens\n";
        } else if (gen->parsed()) {
            for (const auto& s : ctxspell::pipeline::run_gen_errors(cfg))
                std::cout << s.split << " seed " << s.seed << ": " << s.errors << " errors ("
                          << s.real_word_errors << " real-word)\n";
        } else if (correct->parsed()) {
            if (cfg.combinations.empty())
                throw ctxspell::config_error("correct needs a --combination label");
            std::string label = cfg.combinations.front();
            auto result = ctxspell::pipeline::run_correct(cfg, opt.input_path, label);
            std::cout << result.corrected_text;
            std::filesystem::create_directories(cfg.output_dir);
            auto stem = std::filesystem::path(opt.input_path).stem().string();
            ctxspell::pipeline::write_file(
                std::filesystem::path(cfg.output_dir) / (stem + ".corrected.txt"),
                result.corrected_text);
            std::ofstream anno(std::filesystem::path(cfg.output_dir) / (stem + ".anno.tsv"));
            ctxspell::pipeline::write_correction_records(anno, result, label);
        } else if (evaluate->parsed()) {
            std::optional<std::string> scope;
            if (opt.scope != "all") scope = opt.scope;
            auto summary = ctxspell::pipeline::run_evaluate(cfg, scope);
            for (const auto& f : summary.report_files) std::cout << f << '\n';
        } else if (search->parsed()) {
            auto summary = ctxspell::pipeline::run_search_weights(cfg, opt.scope);
            std::cout << "best on train half:\n";
            for (std::size_t i = 0; i < summary.top_labels.size(); ++i)
                std::cout << "  " << (i + 1) << ". " << summary.top_labels[i] << '\n';
            if (!summary.validation_labels.empty()) {
                std::cout << "validation order on test half:\n";
                for (std::size_t i = 0; i < summary.validation_labels.size(); ++i)
                    std::cout << "  " << (i + 1) << ". " << summary.validation_labels[i] << '\n';
            }
        }
        return 0;
    } catch (const ctxspell::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
