#ifndef CTXSPELL_RUN_CONFIG_HPP
#define CTXSPELL_RUN_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "ctxspell/text.hpp"

#include <json.hpp>

namespace ctxspell {

/// Declarative experiment configuration (JSON file); command-line flags
/// override individual fields.
struct run_config {
    std::string lexicon_path;
    std::string rule_path; // empty = no contextual rules
    std::map<std::string, std::vector<std::string>> corpus_globs; // train/test/real
    std::string real_ledger_path; // gold ledger for the pre-corrupted "real" split
    double error_rate = 0.05;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<std::string> techniques = {"random", "CG", "BF", "DF"};
    std::vector<std::string> combinations;
    std::string output_dir = "out";
    std::string report_format = "table";
    std::uint64_t eval_seed = 20633; // seed for the random-baseline picks

    const std::vector<std::string>* globs_for(const std::string& split) const {
        auto it = corpus_globs.find(split);
        return it == corpus_globs.end() || it->second.empty() ? nullptr : &it->second;
    }
};

inline run_config parse_config(const nlohmann::json& j, const std::string& where) {
    run_config cfg;
    try {
        if (j.contains("lexicon")) cfg.lexicon_path = j.at("lexicon").get<std::string>();
        if (j.contains("rules")) cfg.rule_path = j.at("rules").get<std::string>();
        if (j.contains("corpus"))
            for (const auto& [split, globs] : j.at("corpus").items()) {
                if (split != "train" && split != "test" && split != "real")
                    throw config_error("unknown corpus split '" + split + "'");
                cfg.corpus_globs[split] = globs.get<std::vector<std::string>>();
            }
        if (j.contains("real_ledger")) cfg.real_ledger_path = j.at("real_ledger").get<std::string>();
        if (j.contains("error_rate")) cfg.error_rate = j.at("error_rate").get<double>();
        if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (j.contains("techniques")) cfg.techniques = j.at("techniques").get<std::vector<std::string>>();
        if (j.contains("combinations"))
            cfg.combinations = j.at("combinations").get<std::vector<std::string>>();
        if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("report_format")) cfg.report_format = j.at("report_format").get<std::string>();
        if (j.contains("eval_seed")) cfg.eval_seed = j.at("eval_seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error(where + ": " + e.what());
    }
    if (!(cfg.error_rate > 0.0 && cfg.error_rate < 1.0))
        throw config_error(where + ": error_rate must be in (0, 1)");
    return cfg;
}

inline run_config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot read config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(path + ": " + e.what());
    }
    return parse_config(j, path);
}

} // namespace ctxspell

#endif
