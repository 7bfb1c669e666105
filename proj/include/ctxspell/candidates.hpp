#ifndef CTXSPELL_CANDIDATES_HPP
#define CTXSPELL_CANDIDATES_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "ctxspell/corpus.hpp"
#include "ctxspell/lexicon.hpp"
#include "ctxspell/pos.hpp"
#include "ctxspell/text.hpp"

namespace ctxspell {

inline constexpr std::string_view default_alphabet = "abcdefghijklmnopqrstuvwxyz";

enum class edit_kind : std::uint8_t { case_only, substitution, insertion, deletion, transposition };

inline std::string_view to_string(edit_kind e) {
    switch (e) {
        case edit_kind::case_only: return "case_only";
        case edit_kind::substitution: return "substitution";
        case edit_kind::insertion: return "insertion";
        case edit_kind::deletion: return "deletion";
        case edit_kind::transposition: return "transposition";
    }
    return "";
}

/// All strings reachable from `surface` by exactly one edit operation
/// (single-char deletion, insertion, substitution, adjacent transposition),
/// case-folded before editing. Sorted and deduplicated; never contains the
/// folded input itself.
inline std::vector<std::string> damerau_neighbors(std::string_view surface,
                                                  std::string_view alphabet = default_alphabet) {
    const std::string s = fold(surface);
    const std::size_t n = s.size();
    std::vector<std::string> out;
    out.reserve((n + 1) * alphabet.size() + 3 * n);

    for (std::size_t i = 0; i < n; ++i) // deletions
        out.push_back(s.substr(0, i) + s.substr(i + 1));
    for (std::size_t i = 0; i <= n; ++i) // insertions
        for (char c : alphabet) out.push_back(s.substr(0, i) + c + s.substr(i));
    for (std::size_t i = 0; i < n; ++i) // substitutions
        for (char c : alphabet)
            if (c != s[i]) {
                std::string t = s;
                t[i] = c;
                out.push_back(std::move(t));
            }
    for (std::size_t i = 0; i + 1 < n; ++i) // adjacent transpositions
        if (s[i] != s[i + 1]) {
            std::string t = s;
            std::swap(t[i], t[i + 1]);
            out.push_back(std::move(t));
        }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct proposal {
    std::string form; // dictionary casing
    edit_kind edit = edit_kind::substitution;
    pos_set readings;
    long long bf = 0;
};

struct proposal_set {
    std::string error_surface;
    token_coord at;
    std::vector<proposal> proposals; // unique forms

    bool empty() const { return proposals.empty(); }
    std::size_t size() const { return proposals.size(); }

    std::vector<std::string> forms() const {
        std::vector<std::string> v;
        v.reserve(proposals.size());
        for (const auto& p : proposals) v.push_back(p.form);
        return v;
    }

    bool has_form(std::string_view f) const {
        for (const auto& p : proposals)
            if (p.form == f) return true;
        return false;
    }
};

namespace detail {

/// Edit relation between the folded error and a folded candidate at
/// distance <= 1. Lengths decide everything except same-length strings,
/// where one mismatch position means substitution and two mean an
/// adjacent swap.
inline edit_kind classify_edit(std::string_view folded_error, std::string_view folded_candidate) {
    if (folded_error == folded_candidate) return edit_kind::case_only;
    if (folded_candidate.size() == folded_error.size() + 1) return edit_kind::insertion;
    if (folded_candidate.size() + 1 == folded_error.size()) return edit_kind::deletion;
    std::size_t first = 0;
    while (first < folded_error.size() && folded_error[first] == folded_candidate[first]) ++first;
    if (first + 1 < folded_error.size() && folded_error[first] == folded_candidate[first + 1] &&
        folded_error[first + 1] == folded_candidate[first] &&
        folded_error.substr(first + 2) == folded_candidate.substr(first + 2))
        return edit_kind::transposition;
    return edit_kind::substitution;
}

inline int edit_priority(edit_kind e) {
    switch (e) {
        case edit_kind::case_only: return 0;
        case edit_kind::substitution: return 1;
        case edit_kind::insertion: return 2;
        case edit_kind::deletion: return 3;
        case edit_kind::transposition: return 4;
    }
    return 5;
}

} // namespace detail

/// Dictionary forms within one edit operation of the (non-word) error,
/// plus pure case variants. Each proposal carries the entry's ambiguity
/// class and frequency; dictionary casing is restored.
inline proposal_set propose(const lexicon& lex, std::string_view error_surface,
                            token_coord at = {}) {
    if (lex.is_known(error_surface))
        throw error("propose() called on a known word: " + std::string(error_surface));

    proposal_set pset;
    pset.error_surface = std::string(error_surface);
    pset.at = std::move(at);

    const std::string folded_error = fold(error_surface);
    std::vector<std::string> candidates = damerau_neighbors(folded_error);
    candidates.push_back(folded_error); // pure case variants, e.g. "Bose" for "bose"
    std::sort(candidates.begin(), candidates.end());

    for (const auto& cand : candidates) {
        for (const auto& entry : lex.find_folded(cand)) {
            edit_kind kind = detail::classify_edit(folded_error, cand);
            bool duplicate = false;
            for (auto& existing : pset.proposals) {
                if (existing.form == entry.form) {
                    duplicate = true;
                    if (detail::edit_priority(kind) < detail::edit_priority(existing.edit))
                        existing.edit = kind;
                    break;
                }
            }
            if (!duplicate)
                pset.proposals.push_back({entry.form, kind, entry.tags(), entry.bf()});
        }
    }
    return pset;
}

/// Heuristic H1: when the misspelling starts lowercase and a lowercase
/// alternative exists, drop capitalized proposals. Never empties the set.
inline proposal_set apply_h1(proposal_set pset) {
    if (!starts_with_lower(pset.error_surface)) return pset;
    bool any_lower = false;
    for (const auto& p : pset.proposals)
        if (starts_with_lower(p.form)) any_lower = true;
    if (!any_lower) return pset;
    std::erase_if(pset.proposals, [](const proposal& p) { return starts_with_upper(p.form); });
    return pset;
}

/// Heuristic H2 excludes short misspellings (< 4 letters) from scoring.
inline bool h2_excluded(std::string_view error_surface) {
    return letter_count(error_surface) < 4;
}

/// Fixture/diff format: `error TAB form1,form2,...`.
inline void write_proposal_set(std::ostream& os, const proposal_set& pset) {
    os << pset.error_surface << '\t';
    for (std::size_t i = 0; i < pset.proposals.size(); ++i) {
        if (i) os << ',';
        os << pset.proposals[i].form;
    }
    os << '\n';
}

} // namespace ctxspell

#endif
