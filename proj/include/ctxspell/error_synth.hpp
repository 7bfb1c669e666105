#ifndef CTXSPELL_ERROR_SYNTH_HPP
#define CTXSPELL_ERROR_SYNTH_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "ctxspell/corpus.hpp"
#include "ctxspell/lexicon.hpp"
#include "ctxspell/rng.hpp"
#include "ctxspell/text.hpp"

namespace ctxspell {

enum class damerau_op : std::uint8_t { insertion, deletion, substitution, transposition };

inline std::string_view to_string(damerau_op op) {
    switch (op) {
        case damerau_op::insertion: return "insertion";
        case damerau_op::deletion: return "deletion";
        case damerau_op::substitution: return "substitution";
        case damerau_op::transposition: return "transposition";
    }
    return "";
}

inline bool parse_damerau_op(std::string_view s, damerau_op& out) {
    if (s == "insertion") out = damerau_op::insertion;
    else if (s == "deletion") out = damerau_op::deletion;
    else if (s == "substitution") out = damerau_op::substitution;
    else if (s == "transposition") out = damerau_op::transposition;
    else return false;
    return true;
}

struct injected_error {
    token_coord at;
    std::string original;
    std::string corrupted;
    damerau_op op = damerau_op::substitution;
    bool became_real_word = false;
};

struct error_run {
    std::uint64_t seed = 0;
    double rate = 0.05;
    std::vector<injected_error> errors;
    corpus corrupted;
};

namespace detail {

/// One random edit of the surface. Draws (op, position, letter) until the
/// result differs from the input and still looks like a word-form, so the
/// output is never empty and never identical.
inline std::pair<std::string, damerau_op> corrupt_surface(std::string_view surface, rng& r) {
    const std::string s(surface);
    for (;;) {
        auto op = static_cast<damerau_op>(r.below(4));
        std::string cand;
        switch (op) {
            case damerau_op::insertion: {
                std::size_t pos = r.below(s.size() + 1);
                char c = r.lowercase_letter();
                cand = s.substr(0, pos) + c + s.substr(pos);
                break;
            }
            case damerau_op::deletion: {
                std::size_t pos = r.below(s.size());
                cand = s.substr(0, pos) + s.substr(pos + 1);
                break;
            }
            case damerau_op::substitution: {
                std::size_t pos = r.below(s.size());
                cand = s;
                cand[pos] = r.lowercase_letter();
                break;
            }
            case damerau_op::transposition: {
                if (s.size() < 2) continue;
                std::size_t pos = r.below(s.size() - 1);
                cand = s;
                std::swap(cand[pos], cand[pos + 1]);
                break;
            }
        }
        if (cand != s && matches_word_pattern(cand)) return {std::move(cand), op};
    }
}

} // namespace detail

/// Corrupt a clean corpus: every lexicon-known word token independently
/// gets one random edit with probability `rate`; everything else passes
/// through byte-identical. Deterministic for a given seed.
inline error_run inject_errors(const corpus& input, const lexicon& lex, double rate,
                               std::uint64_t seed) {
    if (!(rate >= 0.0 && rate < 1.0)) throw config_error("error rate must be in [0, 1)");
    if (input.documents.empty()) throw config_error("cannot corrupt an empty corpus");

    error_run run;
    run.seed = seed;
    run.rate = rate;
    run.corrupted = input;

    rng r(seed);
    for (auto& doc : run.corrupted.documents) {
        for (auto& t : doc.tokens) {
            if (t.kind != token_kind::word) continue;
            if (!lex.is_known(t.surface)) continue; // non-words are left untouched
            if (rate == 0.0 || !r.bernoulli(rate)) continue;
            auto [corrupted, op] = detail::corrupt_surface(t.surface, r);
            injected_error e;
            e.at = {doc.doc_id, t.sent, t.tok};
            e.original = t.surface;
            e.corrupted = corrupted;
            e.op = op;
            e.became_real_word = lex.is_known(corrupted);
            t.surface = std::move(corrupted);
            run.errors.push_back(std::move(e));
        }
    }
    return run;
}

/// (real-word errors, non-word errors); the two always sum to |errors|.
inline std::pair<int, int> classify_errors(const error_run& run, const lexicon& lex) {
    int real = 0, nonword = 0;
    for (const auto& e : run.errors)
        (lex.is_known(e.corrupted) ? real : nonword)++;
    return {real, nonword};
}

// --- gold ledger: doc <TAB> sent <TAB> tok <TAB> original <TAB> corrupted <TAB> op ---

inline void write_ledger(std::ostream& os, const std::vector<injected_error>& errors) {
    for (const auto& e : errors)
        os << e.at.doc_id << '\t' << e.at.sent << '\t' << e.at.tok << '\t' << e.original << '\t'
           << e.corrupted << '\t' << to_string(e.op) << '\n';
}

inline std::vector<injected_error> read_ledger(std::istream& is) {
    std::vector<injected_error> errors;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::string fields[6];
        std::size_t start = 0;
        for (int f = 0; f < 5; ++f) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos)
                throw config_error("ledger line " + std::to_string(lineno) + ": expected 6 fields");
            fields[f] = line.substr(start, tab - start);
            start = tab + 1;
        }
        fields[5] = line.substr(start);

        injected_error e;
        e.at.doc_id = fields[0];
        try {
            e.at.sent = std::stoi(fields[1]);
            e.at.tok = std::stoi(fields[2]);
        } catch (const std::exception&) {
            throw config_error("ledger line " + std::to_string(lineno) + ": bad coordinates");
        }
        e.original = fields[3];
        e.corrupted = fields[4];
        if (!parse_damerau_op(fields[5], e.op))
            throw config_error("ledger line " + std::to_string(lineno) + ": bad op '" + fields[5] + "'");
        errors.push_back(std::move(e));
    }
    return errors;
}

inline std::vector<injected_error> read_ledger_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot read ledger: " + path);
    try {
        return read_ledger(in);
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

} // namespace ctxspell

#endif
