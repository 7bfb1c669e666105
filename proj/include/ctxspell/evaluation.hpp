#ifndef CTXSPELL_EVALUATION_HPP
#define CTXSPELL_EVALUATION_HPP

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ctxspell/candidates.hpp"
#include "ctxspell/combiner.hpp"
#include "ctxspell/constraints.hpp"
#include "ctxspell/error_synth.hpp"
#include "ctxspell/guessers.hpp"
#include "ctxspell/lexicon.hpp"
#include "ctxspell/rng.hpp"

#include <json.hpp>

namespace ctxspell {

/// Two-decimal half-up rounding used by every report surface.
inline double round2(double v) { return std::floor(v * 100.0 + 0.5) / 100.0; }

inline std::string format2(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(2) << round2(v);
    return ss.str();
}

struct eval_scope {
    bool include_real_word_errors = false; // always false; real-word errors are out of scope
    bool h2_only_long = false;             // restrict the population to long misspellings
    bool multiple_proposals_only = false;  // restrict to errors with >= 2 surviving proposals
};

inline eval_scope parse_scope(std::string_view name) {
    if (name == "all") return {};
    if (name == "h2") return {false, true, false};
    if (name == "multi") return {false, false, true};
    throw config_error("unknown scope '" + std::string(name) + "' (expected all|multi|h2)");
}

struct eval_row {
    std::string label;
    double coverage_pct = 0.0;
    double precision_pct = 0.0;
    double avg_proposals = 0.0;
    // raw counters behind the percentages
    long total = 0;
    long answered = 0;
    long correct = 0;
    long selected_sum = 0;
};

/// Error/proposal accounting for the evaluated population (the shape of a
/// corpus-summary table): proposal numbers describe the candidate
/// generator's raw output, before the case heuristic.
struct table_totals {
    long words = 0;
    long errors = 0;
    long real_word_errors = 0;
    long nonword_errors = 0;
    long proposals = 0;
    long multi_proposal_errors = 0;
    long long_errors = 0;
    long long_proposals = 0;
    long long_multi_errors = 0;
};

struct eval_report {
    std::vector<eval_row> rows;
    eval_scope scope;
    std::string corpus_tag; // train|test|real
    table_totals totals;
};

/// A row-producing technique: one guesser by name ("random", "CG", "DF",
/// "BF", or a registered hook), or a weighted combination. `h2` marks the
/// +H2 variant of a single guesser.
struct technique {
    std::string single;
    bool h2 = false;
    combination comb;

    static technique guesser(std::string name, bool h2_variant = false) {
        technique t;
        t.single = std::move(name);
        t.h2 = h2_variant;
        return t;
    }
    static technique combo(combination c) {
        technique t;
        t.comb = std::move(c);
        return t;
    }

    bool is_single() const { return !single.empty(); }
    bool uses_h2() const { return is_single() ? h2 : comb.use_h2; }

    std::string label() const {
        if (!is_single()) return comb.label();
        std::string base = single == "random" ? "random baseline" : single;
        if (h2) base = (single == "random" ? std::string("random") : single) + "+H2";
        return base;
    }
};

/// One corrupted corpus plus its gold ledger.
struct run_ref {
    const corpus* corrupted = nullptr;
    const std::vector<injected_error>* ledger = nullptr;
    std::uint64_t run_seed = 0;
};

/// Everything evaluate() needs per gold error, computed once: the
/// proposal set after H1 and each base guesser's verdict.
struct scored_error {
    token_coord at;
    std::string original;
    std::string corrupted;
    bool real_word = false;
    bool h2_long = false;
    std::size_t raw_proposals = 0;
    proposal_set pset; // after H1
    std::map<std::string, guesser_verdict> verdicts;
};

struct eval_context {
    std::vector<scored_error> errors;
    table_totals totals;
};

inline eval_context build_eval_context(std::span<const run_ref> runs, const lexicon& lex,
                                       std::span<const constraint_rule> rules,
                                       const guesser_registry& registry,
                                       std::uint64_t eval_seed = 0x5eed) {
    eval_context ctx;
    for (const auto& run : runs) {
        if (!run.corrupted || !run.ledger) throw error("evaluation run missing corpus or ledger");
        ctx.totals.words += static_cast<long>(run.corrupted->word_count());
        for (const auto& gold : *run.ledger) {
            ctx.totals.errors += 1;
            scored_error se;
            se.at = gold.at;
            se.original = gold.original;
            se.corrupted = gold.corrupted;
            se.real_word = lex.is_known(gold.corrupted);
            if (se.real_word) {
                ctx.totals.real_word_errors += 1;
                ctx.errors.push_back(std::move(se));
                continue;
            }
            ctx.totals.nonword_errors += 1;

            const document* doc = run.corrupted->find(gold.at.doc_id);
            if (!doc) throw error("ledger names unknown document '" + gold.at.doc_id + "'");
            const token* tok = doc->find(gold.at.sent, gold.at.tok);
            if (!tok || tok->surface != gold.corrupted)
                throw error("ledger does not match corpus at " + gold.at.to_string());

            proposal_set raw = propose(lex, gold.corrupted, gold.at);
            se.raw_proposals = raw.size();
            se.h2_long = !h2_excluded(gold.corrupted);
            se.pset = apply_h1(std::move(raw));

            ctx.totals.proposals += static_cast<long>(se.raw_proposals);
            if (se.raw_proposals >= 2) ctx.totals.multi_proposal_errors += 1;
            if (se.h2_long) {
                ctx.totals.long_errors += 1;
                ctx.totals.long_proposals += static_cast<long>(se.raw_proposals);
                if (se.raw_proposals >= 2) ctx.totals.long_multi_errors += 1;
            }

            std::uint64_t seed =
                mix_seed(eval_seed ^ splitmix64(run.run_seed), gold.at.doc_id,
                         static_cast<std::uint64_t>(gold.at.sent), static_cast<std::uint64_t>(gold.at.tok));
            se.verdicts["random"] = guess_random(se.pset, seed);
            se.verdicts["BF"] = guess_bf(se.pset, lex);
            se.verdicts["DF"] = guess_df(se.pset, *run.corrupted, gold.at);
            se.verdicts["CG"] = guess_cg(se.pset, *doc, lex, rules);

            std::vector<std::string> context_forms;
            for (const auto& t : doc->sentence(gold.at.sent))
                if (t.kind == token_kind::word && t.tok != gold.at.tok)
                    context_forms.push_back(t.surface);
            for (const auto& name : registry.names())
                se.verdicts[name] = registry.run_hook(name, se.pset, context_forms);

            ctx.errors.push_back(std::move(se));
        }
    }
    return ctx;
}

namespace detail {

inline bool selected_contains_gold(const std::vector<std::string>& selected,
                                   const std::string& gold_original) {
    const std::string gold = fold(gold_original);
    for (const auto& f : selected)
        if (fold(f) == gold) return true;
    return false;
}

inline const guesser_verdict& verdict_for(const scored_error& se, const std::string& name) {
    auto it = se.verdicts.find(name);
    if (it == se.verdicts.end()) throw config_error("unknown guesser '" + name + "'");
    return it->second;
}

} // namespace detail

/// Score one technique over the in-scope errors.
///
///   coverage  = answered / total * 100
///   precision = correct / answered * 100   (gold among the selected)
///   # prop.   = mean selected-set size over answered errors
///
/// A +H2 technique only answers long misspellings but keeps the full
/// in-scope denominator, so adding H2 can only lower coverage.
inline eval_row evaluate(const eval_context& ctx, const technique& tech, const eval_scope& scope) {
    if (scope.include_real_word_errors)
        throw config_error("real-word errors are out of scope for evaluation");

    eval_row row;
    row.label = tech.label();
    for (const auto& se : ctx.errors) {
        if (se.real_word) continue;
        if (scope.h2_only_long && !se.h2_long) continue;
        if (scope.multiple_proposals_only && se.pset.size() < 2) continue;
        row.total += 1;
        if (tech.uses_h2() && !se.h2_long) continue;

        bool answered = false;
        const std::vector<std::string>* selected = nullptr;
        combined_verdict cv;
        if (tech.is_single()) {
            const guesser_verdict& v = detail::verdict_for(se, tech.single);
            answered = v.answered;
            selected = &v.selected;
        } else {
            std::vector<guesser_verdict> verdicts;
            for (const auto& [name, w] : tech.comb.weights)
                verdicts.push_back(detail::verdict_for(se, name));
            cv = combine(verdicts, tech.comb, se.pset);
            answered = cv.answered;
            selected = &cv.selected;
        }
        if (!answered) continue;
        row.answered += 1;
        row.selected_sum += static_cast<long>(selected->size());
        if (detail::selected_contains_gold(*selected, se.original)) row.correct += 1;
    }

    if (row.total == 0) throw error("empty scope: no errors to evaluate");
    row.coverage_pct = 100.0 * static_cast<double>(row.answered) / static_cast<double>(row.total);
    if (row.answered > 0) {
        row.precision_pct = 100.0 * static_cast<double>(row.correct) / static_cast<double>(row.answered);
        row.avg_proposals = static_cast<double>(row.selected_sum) / static_cast<double>(row.answered);
    }
    return row;
}

/// Grid search over integer weight vectors (each guesser taking each value
/// in `weight_values`, not all zero), tried with and without H2, ranked by
/// precision, then coverage, then fewer remaining proposals.
inline std::vector<std::pair<combination, eval_row>>
weight_search(const eval_context& ctx, std::span<const std::string> guesser_ids,
              std::span<const int> weight_values, const eval_scope& scope) {
    if (guesser_ids.empty()) throw config_error("weight search needs at least one guesser");

    std::vector<std::pair<combination, eval_row>> out;
    std::vector<std::size_t> odo(guesser_ids.size(), 0);
    for (;;) {
        bool any_positive = false;
        for (std::size_t i = 0; i < odo.size(); ++i)
            if (weight_values[odo[i]] > 0) any_positive = true;
        if (any_positive) {
            for (bool h2 : {false, true}) {
                combination comb;
                comb.use_h2 = h2;
                for (std::size_t i = 0; i < guesser_ids.size(); ++i)
                    comb.weights[guesser_ids[i]] = weight_values[odo[i]];
                out.emplace_back(comb, evaluate(ctx, technique::combo(comb), scope));
            }
        }
        std::size_t k = 0;
        while (k < odo.size() && ++odo[k] == weight_values.size()) odo[k++] = 0;
        if (k == odo.size()) break;
    }

    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second.precision_pct != b.second.precision_pct)
            return a.second.precision_pct > b.second.precision_pct;
        if (a.second.coverage_pct != b.second.coverage_pct)
            return a.second.coverage_pct > b.second.coverage_pct;
        if (a.second.avg_proposals != b.second.avg_proposals)
            return a.second.avg_proposals < b.second.avg_proposals;
        return a.second.label < b.second.label;
    });
    return out;
}

// --- report emission -------------------------------------------------------

namespace detail {

inline const std::array<std::pair<std::string_view, long table_totals::*>, 9> totals_fields = {{
    {"words", &table_totals::words},
    {"errors", &table_totals::errors},
    {"real-word errors", &table_totals::real_word_errors},
    {"non-word errors", &table_totals::nonword_errors},
    {"proposals", &table_totals::proposals},
    {"errors with multiple proposals", &table_totals::multi_proposal_errors},
    {"long errors (4+ letters)", &table_totals::long_errors},
    {"proposals for long errors", &table_totals::long_proposals},
    {"long errors with multiple proposals", &table_totals::long_multi_errors},
}};

} // namespace detail

/// Render a report as "table" (terminal text), "csv", or "json". The text
/// table uses the column headers Cover. / Prec. / # prop.
inline std::string emit_report(const eval_report& report, std::string_view format) {
    if (report.rows.empty()) throw error("cannot emit an empty report");

    if (format == "table") {
        std::ostringstream os;
        std::size_t label_w = 5;
        for (const auto& r : report.rows) label_w = std::max(label_w, r.label.size());
        os << "corpus: " << report.corpus_tag << '\n';
        for (const auto& [name, member] : detail::totals_fields)
            os << "  " << std::left << std::setw(38) << name << std::right << std::setw(8)
               << report.totals.*member << '\n';
        os << '\n';
        os << std::left << std::setw(static_cast<int>(label_w) + 2) << "" << std::right
           << std::setw(8) << "Cover." << std::setw(8) << "Prec." << std::setw(9) << "# prop."
           << '\n';
        for (const auto& r : report.rows)
            os << std::left << std::setw(static_cast<int>(label_w) + 2) << r.label << std::right
               << std::setw(8) << format2(r.coverage_pct) << std::setw(8) << format2(r.precision_pct)
               << std::setw(9) << format2(r.avg_proposals) << '\n';
        return os.str();
    }

    if (format == "csv") {
        std::ostringstream os;
        for (const auto& [name, member] : detail::totals_fields)
            os << "# " << name << "," << report.totals.*member << '\n';
        os << "label,coverage,precision,avg_proposals\n";
        for (const auto& r : report.rows)
            os << r.label << ',' << format2(r.coverage_pct) << ',' << format2(r.precision_pct)
               << ',' << format2(r.avg_proposals) << '\n';
        return os.str();
    }

    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : report.rows) {
            arr.push_back({{"label", r.label},
                           {"coverage", round2(r.coverage_pct)},
                           {"precision", round2(r.precision_pct)},
                           {"avg_proposals", round2(r.avg_proposals)}});
        }
        return arr.dump(2) + "\n";
    }

    throw config_error("unknown report format '" + std::string(format) + "' (expected table|csv|json)");
}

inline std::string_view report_extension(std::string_view format) {
    if (format == "table") return "txt";
    if (format == "csv") return "csv";
    if (format == "json") return "json";
    throw config_error("unknown report format '" + std::string(format) + "'");
}

} // namespace ctxspell

#endif
