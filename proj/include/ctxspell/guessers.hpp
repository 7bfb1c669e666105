#ifndef CTXSPELL_GUESSERS_HPP
#define CTXSPELL_GUESSERS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctxspell/candidates.hpp"
#include "ctxspell/constraints.hpp"
#include "ctxspell/corpus.hpp"
#include "ctxspell/lexicon.hpp"
#include "ctxspell/rng.hpp"

namespace ctxspell {

/// One technique's answer for one error: either it abstains, or it selects
/// a nonempty subset of the proposal forms.
struct guesser_verdict {
    std::string guesser_id;
    bool answered = false;
    std::vector<std::string> selected; // sorted; empty iff !answered

    static guesser_verdict abstain(std::string id) { return {std::move(id), false, {}}; }
};

namespace detail {

inline guesser_verdict make_verdict(std::string id, std::vector<std::string> selected) {
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    guesser_verdict v;
    v.guesser_id = std::move(id);
    v.answered = !selected.empty();
    v.selected = std::move(selected);
    return v;
}

/// Argmax selection over a positive score; abstains when no proposal
/// scores above zero. Ties keep every argmax form.
template <typename ScoreFn>
guesser_verdict argmax_verdict(std::string id, const proposal_set& pset, ScoreFn&& score) {
    long long best = 0;
    for (const auto& p : pset.proposals) best = std::max(best, static_cast<long long>(score(p)));
    if (best <= 0) return guesser_verdict::abstain(std::move(id));
    std::vector<std::string> selected;
    for (const auto& p : pset.proposals)
        if (static_cast<long long>(score(p)) == best) selected.push_back(p.form);
    return make_verdict(std::move(id), std::move(selected));
}

} // namespace detail

/// Baseline: pick one proposal uniformly at random (deterministic per seed).
inline guesser_verdict guess_random(const proposal_set& pset, std::uint64_t seed) {
    if (pset.empty()) return guesser_verdict::abstain("random");
    rng r(seed);
    const auto& pick = pset.proposals[r.below(pset.proposals.size())];
    return detail::make_verdict("random", {pick.form});
}

/// Highest global (background) frequency wins.
inline guesser_verdict guess_bf(const proposal_set& pset, const lexicon& lex) {
    return detail::argmax_verdict("BF", pset, [&](const proposal& p) { return lex.bf(p.form); });
}

/// Highest frequency within the error's own document wins; the error
/// occurrence itself is not counted.
inline guesser_verdict guess_df(const proposal_set& pset, const corpus& c,
                                const token_coord& at) {
    const document* doc = c.find(at.doc_id);
    if (!doc || !doc->find(at.sent, at.tok))
        throw error("guess_df: unknown token coordinate " + at.to_string());
    doc_freq_table tab = doc_freq(c, at.doc_id, at);
    return detail::argmax_verdict("DF", pset, [&](const proposal& p) { return tab.count(p.form); });
}

namespace detail {

/// Sentence readings for the contextual filter: known words get their
/// ambiguity class, unknown words the full tagset (out-of-lexicon context
/// must not break rules), punctuation PUNCT and numbers NUM. The error
/// token holds every proposal's readings tagged with their origin.
inline std::vector<reading_token> build_sentence_readings(std::span<const token> sentence,
                                                          int error_tok,
                                                          const proposal_set& pset,
                                                          const lexicon& lex) {
    std::vector<reading_token> out;
    out.reserve(sentence.size());
    for (const auto& t : sentence) {
        reading_token rt;
        if (t.tok == error_tok) {
            for (std::size_t k = 0; k < pset.proposals.size(); ++k)
                for (pos p : pset.proposals[k].readings.to_vector())
                    rt.readings.push_back({static_cast<int>(k), p});
        } else if (t.kind == token_kind::punct) {
            rt.readings.push_back({-1, pos::punct});
        } else if (t.kind == token_kind::number) {
            rt.readings.push_back({-1, pos::num});
        } else if (t.kind == token_kind::word) {
            pos_set tags = lex.readings(t.surface);
            if (tags.empty()) tags = pos_set::full_lexical();
            for (pos p : tags.to_vector()) rt.readings.push_back({-1, p});
        } else {
            for (pos p : pos_set::full_lexical().to_vector()) rt.readings.push_back({-1, p});
        }
        out.push_back(std::move(rt));
    }
    return out;
}

} // namespace detail

/// Contextual (constraint-rule) guesser: the proposals' readings are
/// placed on the error token as alternative interpretations, the rules
/// eliminate what the POS context rules out, and the proposals that keep
/// at least one reading are selected.
inline guesser_verdict guess_cg(const proposal_set& pset, const document& doc,
                                const lexicon& lex, std::span<const constraint_rule> rules) {
    if (pset.at.doc_id != doc.doc_id)
        throw error("guess_cg: proposal set does not belong to document " + doc.doc_id);
    auto sentence = doc.sentence(pset.at.sent);
    if (sentence.empty()) throw error("guess_cg: unknown sentence " + pset.at.to_string());
    if (pset.empty()) return guesser_verdict::abstain("CG");

    auto readings = detail::build_sentence_readings(sentence, pset.at.tok, pset, lex);
    eliminate_readings(readings, rules);

    std::size_t error_index = 0;
    for (std::size_t i = 0; i < sentence.size(); ++i)
        if (sentence[i].tok == pset.at.tok) error_index = i;

    std::vector<std::string> selected;
    std::vector<bool> alive(pset.proposals.size(), false);
    for (const auto& r : readings[error_index].readings)
        if (r.origin >= 0) alive[static_cast<std::size_t>(r.origin)] = true;
    for (std::size_t k = 0; k < pset.proposals.size(); ++k)
        if (alive[k]) selected.push_back(pset.proposals[k].form);
    return detail::make_verdict("CG", std::move(selected));
}

// --- semantic guesser extension point -------------------------------------

/// Contract: given the proposal set and the word-forms surrounding the
/// error, return a verdict or nothing (abstain). Only invoked when every
/// proposal is categorised as a noun.
using semantic_hook =
    std::function<std::optional<guesser_verdict>(const proposal_set&, std::span<const std::string>)>;

class guesser_registry {
public:
    guesser_registry() = default;

    /// Registry with the built-in "CD" hook, which always abstains.
    static guesser_registry with_builtin_cd() {
        guesser_registry reg;
        reg.register_semantic_hook("CD", [](const proposal_set&, std::span<const std::string>) {
            return std::nullopt;
        });
        return reg;
    }

    void register_semantic_hook(std::string name, semantic_hook hook) {
        if (hooks_.count(name)) throw config_error("duplicate guesser '" + name + "'");
        hooks_.emplace(std::move(name), std::move(hook));
    }

    bool has(const std::string& name) const { return hooks_.count(name) != 0; }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : hooks_) out.push_back(k);
        return out;
    }

    guesser_verdict run_hook(const std::string& name, const proposal_set& pset,
                             std::span<const std::string> context_forms) const {
        auto it = hooks_.find(name);
        if (it == hooks_.end()) throw config_error("unknown guesser '" + name + "'");
        for (const auto& p : pset.proposals)
            if (!p.readings.is_subset_of(pos_set::of({pos::noun})))
                return guesser_verdict::abstain(name); // hook only applies to all-noun sets
        auto result = it->second(pset, context_forms);
        if (!result) return guesser_verdict::abstain(name);
        guesser_verdict v = std::move(*result);
        v.guesser_id = name;
        if (v.answered) {
            if (v.selected.empty())
                throw error("semantic hook '" + name + "' answered with an empty selection");
            for (const auto& f : v.selected)
                if (!pset.has_form(f))
                    throw error("semantic hook '" + name + "' selected unknown form '" + f + "'");
            std::sort(v.selected.begin(), v.selected.end());
        } else if (!v.selected.empty()) {
            throw error("semantic hook '" + name + "' abstained but selected forms");
        }
        return v;
    }

private:
    std::map<std::string, semantic_hook> hooks_;
};

/// Verdict dump line: `doc:sent:tok TAB guesser TAB answered TAB form1,form2`.
inline void write_verdict(std::ostream& os, const token_coord& at, const guesser_verdict& v) {
    os << at.to_string() << '\t' << v.guesser_id << '\t' << (v.answered ? "true" : "false") << '\t';
    for (std::size_t i = 0; i < v.selected.size(); ++i) {
        if (i) os << ',';
        os << v.selected[i];
    }
    os << '\n';
}

} // namespace ctxspell

#endif
