#ifndef CTXSPELL_COMBINER_HPP
#define CTXSPELL_COMBINER_HPP

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctxspell/candidates.hpp"
#include "ctxspell/guessers.hpp"
#include "ctxspell/text.hpp"

namespace ctxspell {

// Canonical guesser order for combination labels.
inline constexpr std::array<std::string_view, 4> combiner_guesser_order = {"CG", "DF", "BF", "CD"};

/// Weighted-voting configuration, e.g. CG2+BF1: CG's picks get 2 votes
/// each, BF's 1. H1 is on by default everywhere; +H2 restricts scoring to
/// long misspellings.
struct combination {
    std::map<std::string, int> weights;
    bool use_h1 = true;
    bool use_h2 = false;

    /// Canonical notation: positive weights in the order CG, DF, BF, CD
    /// (any extension guessers after, alphabetically), then "+H2".
    std::string label() const {
        std::string out;
        auto append = [&](std::string_view name, int w) {
            if (!out.empty()) out += '+';
            out += name;
            out += std::to_string(w);
        };
        for (auto name : combiner_guesser_order) {
            auto it = weights.find(std::string(name));
            if (it != weights.end() && it->second > 0) append(name, it->second);
        }
        for (const auto& [name, w] : weights) {
            if (w <= 0) continue;
            if (std::find(combiner_guesser_order.begin(), combiner_guesser_order.end(), name) !=
                combiner_guesser_order.end())
                continue;
            append(name, w);
        }
        if (use_h2) {
            if (!out.empty()) out += '+';
            out += "H2";
        }
        return out;
    }
};

/// Parse notation like "CG1+DF2+H2". Weights are single digits; H2 may
/// only appear as the final term; at least one weight must be positive.
inline combination parse_combination(std::string_view label) {
    combination comb;
    if (label.empty()) throw config_error("empty combination label");

    std::vector<std::string_view> terms;
    std::size_t start = 0;
    for (;;) {
        std::size_t plus = label.find('+', start);
        terms.push_back(label.substr(start, plus == std::string_view::npos ? std::string_view::npos
                                                                           : plus - start));
        if (plus == std::string_view::npos) break;
        start = plus + 1;
    }

    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string_view term = terms[i];
        if (term == "H2") {
            if (i + 1 != terms.size())
                throw config_error("combination '" + std::string(label) + "': H2 must be the last term");
            comb.use_h2 = true;
            continue;
        }
        if (term.size() < 2 || !is_ascii_digit(term.back()))
            throw config_error("combination term '" + std::string(term) + "': expected <guesser><digit>");
        std::string name(term.substr(0, term.size() - 1));
        int weight = term.back() - '0';
        if (std::find(combiner_guesser_order.begin(), combiner_guesser_order.end(), name) ==
            combiner_guesser_order.end())
            throw config_error("combination term '" + std::string(term) + "': unknown guesser '" +
                               name + "'");
        if (comb.weights.count(name))
            throw config_error("combination '" + std::string(label) + "': duplicate guesser " + name);
        comb.weights[name] = weight;
    }

    bool any_positive = false;
    for (const auto& [name, w] : comb.weights)
        if (w > 0) any_positive = true;
    if (!any_positive)
        throw config_error("combination '" + std::string(label) + "': total weight is zero");
    return comb;
}

struct combined_verdict {
    bool answered = false;
    std::vector<std::string> selected; // argmax of the tally, sorted
    std::map<std::string, int> vote_tally;
};

/// Weighted vote: every answering guesser adds its weight to each form it
/// selected; the forms with the highest tally win. Abstaining guessers
/// contribute nothing; the result abstains unless some answering guesser
/// carries positive weight.
inline combined_verdict combine(std::span<const guesser_verdict> verdicts, const combination& comb,
                                const proposal_set& pset) {
    combined_verdict out;
    for (const auto& v : verdicts) {
        auto it = comb.weights.find(v.guesser_id);
        if (it == comb.weights.end())
            throw config_error("combine: no weight configured for guesser '" + v.guesser_id + "'");
        if (!v.answered) continue;
        for (const auto& form : v.selected) {
            if (!pset.has_form(form))
                throw error("combine: verdict from '" + v.guesser_id + "' selected '" + form +
                            "', which is not a proposal");
            out.vote_tally[form] += it->second;
        }
        if (it->second > 0) out.answered = true;
    }
    if (!out.answered) return out;

    int best = 0;
    for (const auto& [form, votes] : out.vote_tally) best = std::max(best, votes);
    for (const auto& [form, votes] : out.vote_tally)
        if (votes == best) out.selected.push_back(form);
    std::sort(out.selected.begin(), out.selected.end());
    return out;
}

} // namespace ctxspell

#endif
