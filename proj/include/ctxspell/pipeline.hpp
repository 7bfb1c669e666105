#ifndef CTXSPELL_PIPELINE_HPP
#define CTXSPELL_PIPELINE_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctxspell/combiner.hpp"
#include "ctxspell/corpus.hpp"
#include "ctxspell/error_synth.hpp"
#include "ctxspell/evaluation.hpp"
#include "ctxspell/guessers.hpp"
#include "ctxspell/lexicon.hpp"
#include "ctxspell/run_config.hpp"

namespace ctxspell::pipeline {

namespace fs = std::filesystem;

/// Shell-style match on the basename only ('*' and '?'); the directory
/// part of a pattern is taken literally.
inline bool glob_match(std::string_view pattern, std::string_view name) {
    std::size_t p = 0, n = 0, star = std::string_view::npos, star_n = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            star_n = n;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            n = ++star_n;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

inline std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
    std::vector<std::string> out;
    for (const auto& pattern : patterns) {
        fs::path pat(pattern);
        std::string base = pat.filename().string();
        if (base.find('*') == std::string::npos && base.find('?') == std::string::npos) {
            if (fs::is_regular_file(pat)) out.push_back(pat.string());
            continue;
        }
        fs::path dir = pat.parent_path().empty() ? fs::path(".") : pat.parent_path();
        if (!fs::is_directory(dir)) continue;
        std::vector<std::string> matched;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && glob_match(base, entry.path().filename().string()))
                matched.push_back(entry.path().string());
        std::sort(matched.begin(), matched.end());
        out.insert(out.end(), matched.begin(), matched.end());
    }
    return out;
}

inline void write_file(const fs::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write: " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

inline split_tag split_from_name(const std::string& name) {
    if (name == "train") return split_tag::train;
    if (name == "test") return split_tag::test;
    if (name == "real") return split_tag::real;
    return split_tag::none;
}

inline corpus ingest_split(const run_config& cfg, const std::string& split) {
    const auto* globs = cfg.globs_for(split);
    if (!globs) throw config_error("no corpus globs configured for split '" + split + "'");
    auto files = expand_globs(*globs);
    if (files.empty()) throw config_error("no files matched corpus globs for split '" + split + "'");
    return ingest_corpus(files, split_from_name(split));
}

struct ingest_summary {
    std::string split;
    std::size_t documents = 0;
    std::size_t sentences = 0;
    std::size_t tokens = 0;
};

/// `ingest`: write one canonical dump per configured split.
inline std::vector<ingest_summary> run_ingest(const run_config& cfg) {
    fs::create_directories(cfg.output_dir);
    std::vector<ingest_summary> out;
    for (const std::string split : {"train", "test", "real"}) {
        if (!cfg.globs_for(split)) continue;
        corpus c = ingest_split(cfg, split);
        std::ostringstream dump;
        write_corpus_dump(dump, c);
        write_file(fs::path(cfg.output_dir) / ("corpus_" + split + ".dump.tsv"), dump.str());
        out.push_back({split, c.documents.size(), c.sentence_count(), c.token_count()});
    }
    if (out.empty()) throw config_error("config names no corpus splits");
    return out;
}

struct gen_errors_summary {
    std::string split;
    std::uint64_t seed = 0;
    std::size_t errors = 0;
    std::size_t real_word_errors = 0;
};

inline std::string ledger_name(const std::string& split, std::uint64_t seed) {
    return "errors_" + split + "_seed" + std::to_string(seed) + ".tsv";
}

inline std::string corrupt_dump_name(const std::string& split, std::uint64_t seed) {
    return "corrupt_" + split + "_seed" + std::to_string(seed) + ".dump.tsv";
}

/// `gen-errors`: corrupt each train/test document set once per seed and
/// write the gold ledger plus the corrupted corpus (as a dump for exact
/// coordinates and as plain text for eyeballing).
inline std::vector<gen_errors_summary> run_gen_errors(const run_config& cfg) {
    if (cfg.seeds.empty()) throw config_error("gen-errors needs at least one seed");
    lexicon lex = load_lexicon(cfg.lexicon_path);
    fs::create_directories(cfg.output_dir);

    std::vector<gen_errors_summary> out;
    for (const std::string split : {"train", "test"}) {
        if (!cfg.globs_for(split)) continue;
        corpus clean = ingest_split(cfg, split);
        for (std::uint64_t seed : cfg.seeds) {
            error_run run = inject_errors(clean, lex, cfg.error_rate, seed);

            std::ostringstream ledger;
            write_ledger(ledger, run.errors);
            write_file(fs::path(cfg.output_dir) / ledger_name(split, seed), ledger.str());

            std::ostringstream dump;
            write_corpus_dump(dump, run.corrupted);
            write_file(fs::path(cfg.output_dir) / corrupt_dump_name(split, seed), dump.str());

            std::string text;
            for (const auto& d : run.corrupted.documents) text += detokenize(d);
            write_file(fs::path(cfg.output_dir) /
                           ("corrupt_" + split + "_seed" + std::to_string(seed) + ".txt"),
                       text);

            auto [real, nonword] = classify_errors(run, lex);
            out.push_back({split, seed, run.errors.size(), static_cast<std::size_t>(real)});
        }
    }
    if (out.empty()) throw config_error("config names no train or test corpus globs");
    return out;
}

struct loaded_runs {
    std::vector<corpus> corpora;       // stable storage
    std::vector<std::vector<injected_error>> ledgers;
    std::vector<run_ref> refs;
};

/// Load the gen-errors artifacts for one split back in.
inline loaded_runs load_runs(const run_config& cfg, const std::string& split) {
    loaded_runs out;
    if (split == "real") {
        const auto* globs = cfg.globs_for("real");
        if (!globs) throw config_error("no corpus globs configured for split 'real'");
        auto files = expand_globs(*globs);
        if (files.empty()) throw config_error("no files matched corpus globs for split 'real'");
        corpus c;
        for (const auto& f : files) {
            corpus part = read_corpus_dump_file(f, split_tag::real);
            for (auto& d : part.documents) c.documents.push_back(std::move(d));
        }
        if (cfg.real_ledger_path.empty())
            throw config_error("split 'real' needs a real_ledger path in the config");
        out.corpora.push_back(std::move(c));
        out.ledgers.push_back(read_ledger_file(cfg.real_ledger_path));
        out.refs.push_back({&out.corpora.back(), &out.ledgers.back(), 0});
        return out;
    }

    out.corpora.reserve(cfg.seeds.size());
    out.ledgers.reserve(cfg.seeds.size());
    for (std::uint64_t seed : cfg.seeds) {
        fs::path dump = fs::path(cfg.output_dir) / corrupt_dump_name(split, seed);
        fs::path ledger = fs::path(cfg.output_dir) / ledger_name(split, seed);
        if (!fs::exists(dump) || !fs::exists(ledger))
            throw error("missing gen-errors output for split '" + split + "' seed " +
                        std::to_string(seed) + " (run gen-errors first)");
        out.corpora.push_back(read_corpus_dump_file(dump.string(), split_from_name(split)));
        out.ledgers.push_back(read_ledger_file(ledger.string()));
    }
    for (std::size_t i = 0; i < out.corpora.size(); ++i)
        out.refs.push_back({&out.corpora[i], &out.ledgers[i],
                            split == "real" ? 0 : cfg.seeds[i]});
    return out;
}

inline std::vector<constraint_rule> load_rules_if_any(const run_config& cfg) {
    if (cfg.rule_path.empty()) return {};
    return load_rules(cfg.rule_path);
}

inline std::vector<technique> report_techniques(const run_config& cfg) {
    std::vector<technique> techs;
    for (const auto& name : cfg.techniques) {
        techs.push_back(technique::guesser(name, false));
        techs.push_back(technique::guesser(name, true));
    }
    for (const auto& label : cfg.combinations) techs.push_back(technique::combo(parse_combination(label)));
    return techs;
}

inline std::string scope_suffix(const eval_scope& scope) {
    if (scope.multiple_proposals_only) return "multi";
    if (scope.h2_only_long) return "h2";
    return "all";
}

struct evaluate_summary {
    std::vector<std::string> report_files;
};

/// `evaluate`: one report per (split, scope) with a row per technique and
/// combination.
inline evaluate_summary run_evaluate(const run_config& cfg,
                                     std::optional<std::string> only_scope = std::nullopt) {
    lexicon lex = load_lexicon(cfg.lexicon_path);
    auto rules = load_rules_if_any(cfg);
    auto registry = guesser_registry::with_builtin_cd();
    auto techs = report_techniques(cfg);
    fs::create_directories(cfg.output_dir);

    std::vector<std::string> scopes =
        only_scope ? std::vector<std::string>{*only_scope} : std::vector<std::string>{"all", "multi"};

    evaluate_summary out;
    for (const std::string split : {"train", "test", "real"}) {
        if (!cfg.globs_for(split)) continue;
        loaded_runs runs = load_runs(cfg, split);
        eval_context ctx = build_eval_context(runs.refs, lex, rules, registry, cfg.eval_seed);
        for (const auto& scope_name : scopes) {
            eval_report report;
            report.scope = parse_scope(scope_name);
            report.corpus_tag = split;
            report.totals = ctx.totals;
            for (const auto& t : techs) report.rows.push_back(evaluate(ctx, t, report.scope));

            fs::path file = fs::path(cfg.output_dir) /
                            ("report_" + split + "_" + scope_name + "." +
                             std::string(report_extension(cfg.report_format)));
            write_file(file, emit_report(report, cfg.report_format));
            out.report_files.push_back(file.string());
        }
    }
    if (out.report_files.empty()) throw config_error("config names no corpus splits");
    return out;
}

struct search_summary {
    std::vector<std::string> top_labels;       // best-first, from the train half
    std::vector<std::string> validation_labels; // the same combinations re-ranked on test
    std::string search_file;
    std::string validation_file;
};

/// `search-weights`: full grid over the given guessers on the train half,
/// then re-evaluate the best `top_k` combinations on the test half.
inline search_summary run_search_weights(const run_config& cfg, const std::string& scope_name = "all",
                                         std::vector<std::string> guessers = {"CG", "DF", "BF", "CD"},
                                         std::vector<int> weight_values = {0, 1, 2},
                                         std::size_t top_k = 3) {
    lexicon lex = load_lexicon(cfg.lexicon_path);
    auto rules = load_rules_if_any(cfg);
    auto registry = guesser_registry::with_builtin_cd();
    eval_scope scope = parse_scope(scope_name);
    fs::create_directories(cfg.output_dir);

    loaded_runs train = load_runs(cfg, "train");
    eval_context train_ctx = build_eval_context(train.refs, lex, rules, registry, cfg.eval_seed);
    auto ranked = weight_search(train_ctx, guessers, weight_values, scope);

    eval_report search_report;
    search_report.scope = scope;
    search_report.corpus_tag = "train";
    search_report.totals = train_ctx.totals;
    for (auto& [comb, row] : ranked) search_report.rows.push_back(row);

    search_summary out;
    fs::path search_file = fs::path(cfg.output_dir) /
                           ("weight_search_" + scope_name + "." +
                            std::string(report_extension(cfg.report_format)));
    write_file(search_file, emit_report(search_report, cfg.report_format));
    out.search_file = search_file.string();

    top_k = std::min(top_k, ranked.size());
    for (std::size_t i = 0; i < top_k; ++i) out.top_labels.push_back(ranked[i].first.label());

    if (cfg.globs_for("test")) {
        loaded_runs test = load_runs(cfg, "test");
        eval_context test_ctx = build_eval_context(test.refs, lex, rules, registry, cfg.eval_seed);
        std::vector<std::pair<combination, eval_row>> validation;
        for (std::size_t i = 0; i < top_k; ++i)
            validation.emplace_back(ranked[i].first,
                                    evaluate(test_ctx, technique::combo(ranked[i].first), scope));
        std::stable_sort(validation.begin(), validation.end(), [](const auto& a, const auto& b) {
            if (a.second.precision_pct != b.second.precision_pct)
                return a.second.precision_pct > b.second.precision_pct;
            if (a.second.coverage_pct != b.second.coverage_pct)
                return a.second.coverage_pct > b.second.coverage_pct;
            if (a.second.avg_proposals != b.second.avg_proposals)
                return a.second.avg_proposals < b.second.avg_proposals;
            return a.second.label < b.second.label;
        });

        eval_report vreport;
        vreport.scope = scope;
        vreport.corpus_tag = "test";
        vreport.totals = test_ctx.totals;
        for (auto& [comb, row] : validation) {
            vreport.rows.push_back(row);
            out.validation_labels.push_back(comb.label());
        }
        fs::path vfile = fs::path(cfg.output_dir) /
                         ("validation_" + scope_name + "." +
                          std::string(report_extension(cfg.report_format)));
        write_file(vfile, emit_report(vreport, cfg.report_format));
        out.validation_file = vfile.string();
    }
    return out;
}

struct correction_record {
    token_coord at;
    std::string error_surface;
    bool answered = false;
    std::vector<std::string> selected;
};

struct correct_result {
    std::string corrected_text;
    std::vector<correction_record> records;
};

namespace detail {

inline std::string adapt_case(const std::string& replacement, const std::string& error_surface) {
    if (starts_with_upper(error_surface) && starts_with_lower(replacement)) {
        std::string out = replacement;
        out[0] = static_cast<char>(out[0] - 'a' + 'A');
        return out;
    }
    return replacement;
}

} // namespace detail

/// `correct`: replace each non-word with the combination's unique winner;
/// anything unresolved is annotated inline as [[error|alt1,alt2]]. Known
/// words, punctuation, and spacing pass through untouched.
inline correct_result run_correct(const run_config& cfg, const std::string& input_path,
                                  const std::string& combination_label) {
    lexicon lex = load_lexicon(cfg.lexicon_path);
    auto rules = load_rules_if_any(cfg);
    auto registry = guesser_registry::with_builtin_cd();
    combination comb = parse_combination(combination_label);

    document doc = make_document(read_file(input_path), ctxspell::detail::stem_of(input_path), input_path);
    corpus ctx_corpus;
    ctx_corpus.documents.push_back(doc);
    const document& ctx_doc = ctx_corpus.documents.front();

    correct_result result;
    for (const auto& t : ctx_doc.tokens) {
        if (t.kind != token_kind::word || lex.is_known(t.surface)) continue;
        token_coord at{ctx_doc.doc_id, t.sent, t.tok};
        proposal_set pset = propose(lex, t.surface, at);
        if (comb.use_h1) pset = apply_h1(std::move(pset));
        if (comb.use_h2 && h2_excluded(t.surface)) {
            result.records.push_back({at, t.surface, false, {}});
            continue;
        }

        std::vector<guesser_verdict> verdicts;
        for (const auto& [name, w] : comb.weights) {
            if (name == "BF") verdicts.push_back(guess_bf(pset, lex));
            else if (name == "DF") verdicts.push_back(guess_df(pset, ctx_corpus, at));
            else if (name == "CG") verdicts.push_back(guess_cg(pset, ctx_doc, lex, rules));
            else {
                std::vector<std::string> context_forms;
                for (const auto& w2 : ctx_doc.sentence(t.sent))
                    if (w2.kind == token_kind::word && w2.tok != t.tok)
                        context_forms.push_back(w2.surface);
                verdicts.push_back(registry.run_hook(name, pset, context_forms));
            }
        }
        combined_verdict cv = combine(verdicts, comb, pset);
        result.records.push_back({at, t.surface, cv.answered, cv.selected});
    }

    // Re-emit the text with replacements/annotations spliced in.
    document out_doc = ctx_doc;
    for (const auto& rec : result.records) {
        token* t = out_doc.find(rec.at.sent, rec.at.tok);
        if (rec.answered && rec.selected.size() == 1) {
            t->surface = detail::adapt_case(rec.selected.front(), rec.error_surface);
        } else {
            std::string alts;
            for (std::size_t i = 0; i < rec.selected.size(); ++i) {
                if (i) alts += ',';
                alts += rec.selected[i];
            }
            t->surface = "[[" + rec.error_surface + "|" + alts + "]]";
        }
    }
    result.corrected_text = detokenize(out_doc);
    return result;
}

inline void write_correction_records(std::ostream& os, const correct_result& result,
                                     const std::string& label) {
    for (const auto& rec : result.records) {
        guesser_verdict v;
        v.guesser_id = label;
        v.answered = rec.answered;
        v.selected = rec.selected;
        write_verdict(os, rec.at, v);
    }
}

} // namespace ctxspell::pipeline

#endif
