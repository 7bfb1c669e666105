#ifndef CTXSPELL_LEXICON_HPP
#define CTXSPELL_LEXICON_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctxspell/corpus.hpp"
#include "ctxspell/pos.hpp"
#include "ctxspell/text.hpp"

namespace ctxspell {

/// One dictionary word-form in a specific casing, with its POS ambiguity
/// class and a global (background) frequency per tag.
struct lex_entry {
    std::string form;
    std::vector<std::pair<pos, long long>> tag_freqs; // sorted by tag

    pos_set tags() const {
        pos_set s;
        for (auto& [p, f] : tag_freqs) s.insert(p);
        return s;
    }

    long long bf() const {
        long long total = 0;
        for (auto& [p, f] : tag_freqs) total += f;
        return total;
    }
};

class lexicon {
public:
    /// Merge one row in. Duplicate (form, pos) rows add up their frequency.
    void add(std::string_view form, pos tag, long long bf) {
        auto& variants = by_folded_[fold(form)];
        lex_entry* e = nullptr;
        for (auto& v : variants)
            if (v.form == form) e = &v;
        if (!e) {
            variants.push_back({std::string(form), {}});
            e = &variants.back();
        }
        for (auto& [p, f] : e->tag_freqs) {
            if (p == tag) {
                f += bf;
                return;
            }
        }
        e->tag_freqs.emplace_back(tag, bf);
        std::sort(e->tag_freqs.begin(), e->tag_freqs.end());
    }

    bool is_known(std::string_view surface) const {
        return by_folded_.find(fold(surface)) != by_folded_.end();
    }

    const lex_entry* find_exact(std::string_view form) const {
        auto it = by_folded_.find(fold(form));
        if (it == by_folded_.end()) return nullptr;
        for (const auto& v : it->second)
            if (v.form == form) return &v;
        return nullptr;
    }

    std::span<const lex_entry> find_folded(std::string_view folded_form) const {
        auto it = by_folded_.find(std::string(folded_form));
        if (it == by_folded_.end()) return {};
        return {it->second.data(), it->second.size()};
    }

    /// Global frequency: exact casing if present, otherwise the case-folded
    /// total over all casings; 0 when absent entirely.
    long long bf(std::string_view form) const {
        auto it = by_folded_.find(fold(form));
        if (it == by_folded_.end()) return 0;
        for (const auto& v : it->second)
            if (v.form == form) return v.bf();
        long long total = 0;
        for (const auto& v : it->second) total += v.bf();
        return total;
    }

    /// POS ambiguity class of a surface: union over all casings under the
    /// folded key. Empty set when the word is unknown.
    pos_set readings(std::string_view surface) const {
        auto it = by_folded_.find(fold(surface));
        pos_set s;
        if (it == by_folded_.end()) return s;
        for (const auto& v : it->second) s = s.union_with(v.tags());
        return s;
    }

    std::size_t form_count() const {
        std::size_t n = 0;
        for (const auto& [k, v] : by_folded_) n += v.size();
        return n;
    }

    /// All folded keys, sorted (test and tooling helper).
    std::vector<std::string> folded_forms() const {
        std::vector<std::string> keys;
        keys.reserve(by_folded_.size());
        for (const auto& [k, v] : by_folded_) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        return keys;
    }

    void merge_from(const lexicon& other) {
        for (const auto& [key, variants] : other.by_folded_)
            for (const auto& v : variants)
                for (const auto& [p, f] : v.tag_freqs) add(v.form, p, f);
    }

private:
    std::unordered_map<std::string, std::vector<lex_entry>> by_folded_;
};

/// TSV loader: `form TAB pos TAB bf`, '#' comments and blank lines allowed.
inline lexicon load_lexicon(std::istream& is) {
    lexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": malformed row (expected form<TAB>pos<TAB>bf)");
        std::string form = line.substr(0, t1);
        std::string tag_name = line.substr(t1 + 1, t2 - t1 - 1);
        std::string bf_text = line.substr(t2 + 1);

        if (form.empty())
            throw config_error("line " + std::to_string(lineno) + ": empty form");
        pos tag;
        if (!parse_pos(tag_name, tag))
            throw config_error("line " + std::to_string(lineno) + ": unknown tag '" + tag_name + "'");
        long long bf = 0;
        try {
            std::size_t used = 0;
            bf = std::stoll(bf_text, &used);
            if (used != bf_text.size() || bf < 0) throw std::invalid_argument("bf");
        } catch (const std::exception&) {
            throw config_error("line " + std::to_string(lineno) + ": bad frequency '" + bf_text + "'");
        }
        lex.add(form, tag, bf);
    }
    return lex;
}

inline lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot read lexicon: " + path);
    try {
        return load_lexicon(in);
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

/// Case-folded word-form counts over one document, optionally omitting one
/// token position (the error occurrence itself).
struct doc_freq_table {
    std::string doc_id;
    std::unordered_map<std::string, int> counts;
    long long total = 0;

    int count(std::string_view form) const {
        auto it = counts.find(fold(form));
        return it == counts.end() ? 0 : it->second;
    }
};

inline doc_freq_table doc_freq(const corpus& c, std::string_view doc_id,
                               std::optional<token_coord> exclude = std::nullopt) {
    const document* d = c.find(doc_id);
    if (!d) throw error("unknown document id: " + std::string(doc_id));
    doc_freq_table tab;
    tab.doc_id = d->doc_id;
    for (const auto& t : d->tokens) {
        if (t.kind != token_kind::word) continue;
        if (exclude && exclude->doc_id == d->doc_id && exclude->sent == t.sent && exclude->tok == t.tok)
            continue;
        ++tab.counts[fold(t.surface)];
        ++tab.total;
    }
    return tab;
}

/// Test/diff format: `form TAB count`, sorted by form.
inline void write_doc_freq(std::ostream& os, const doc_freq_table& tab) {
    std::vector<std::pair<std::string, int>> rows(tab.counts.begin(), tab.counts.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [form, n] : rows) os << form << '\t' << n << '\n';
}

} // namespace ctxspell

#endif
