#ifndef CTXSPELL_CONSTRAINTS_HPP
#define CTXSPELL_CONSTRAINTS_HPP

#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctxspell/pos.hpp"
#include "ctxspell/text.hpp"

namespace ctxspell {

// Reductionist disambiguation rule: remove the target reading from a token
// when both adjacent-context predicates hold. A predicate is either '*'
// (anything, including a missing neighbour) or a tag set that the
// neighbour must have been narrowed to (a single surviving tag in the
// set). Tag sets may use the pseudo-tags PUNCT and BOUND.
struct constraint_rule {
    std::string id;
    pos target = pos::noun;
    std::optional<pos_set> left;  // nullopt = '*'
    std::optional<pos_set> right; // nullopt = '*'
};

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

inline std::optional<pos_set> parse_context(std::string_view field, std::string_view key,
                                            const std::string& where) {
    std::string prefix = std::string(key) + "=";
    if (field.substr(0, prefix.size()) != prefix)
        throw config_error(where + ": expected '" + prefix + "...', got '" + std::string(field) + "'");
    std::string_view value = field.substr(prefix.size());
    if (value == "*") return std::nullopt;
    try {
        return parse_pos_set(value, /*allow_pseudo=*/true);
    } catch (const config_error& e) {
        throw config_error(where + ": " + e.what());
    }
}

} // namespace detail

/// Rule file: `rule_id TAB REMOVE pos TAB IF left=TAGSET|* TAB right=TAGSET|*`
inline std::vector<constraint_rule> parse_rules(std::istream& is) {
    std::vector<constraint_rule> rules;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string where = "rule line " + std::to_string(lineno);

        auto fields = detail::split_tabs(line);
        if (fields.size() != 4) throw config_error(where + ": expected 4 tab-separated fields");

        constraint_rule r;
        r.id = fields[0];
        if (fields[1].substr(0, 7) != "REMOVE ")
            throw config_error(where + ": expected 'REMOVE <pos>'");
        if (!parse_pos(fields[1].substr(7), r.target))
            throw config_error(where + ": unknown target tag '" + fields[1].substr(7) + "'");
        if (fields[2].substr(0, 3) != "IF ")
            throw config_error(where + ": expected 'IF left=...'");
        r.left = detail::parse_context(fields[2].substr(3), "left", where);
        r.right = detail::parse_context(fields[3], "right", where);
        if (!r.left && !r.right)
            throw config_error(where + ": at least one context must be constrained");
        rules.push_back(std::move(r));
    }
    return rules;
}

inline std::vector<constraint_rule> load_rules(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot read rule file: " + path);
    try {
        return parse_rules(in);
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

// A reading is one alternative interpretation of a token. For ordinary
// tokens origin is -1; for an error token each reading remembers which
// correction proposal put it there.
struct reading {
    int origin = -1;
    pos tag = pos::noun;
};

struct reading_token {
    std::vector<reading> readings;

    pos_set tag_set() const {
        pos_set s;
        for (const auto& r : readings) s.insert(r.tag);
        return s;
    }

    bool has_tag(pos p) const {
        for (const auto& r : readings)
            if (r.tag == p) return true;
        return false;
    }
};

namespace detail {

/// Tag a neighbour presents to a context predicate: its single surviving
/// tag, or nothing while it is still ambiguous.
inline std::optional<pos> context_tag(std::span<const reading_token> sentence, std::ptrdiff_t i) {
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(sentence.size())) return pos::bound;
    pos_set tags = sentence[static_cast<std::size_t>(i)].tag_set();
    if (tags.size() == 1) return tags.single();
    return std::nullopt;
}

inline bool context_matches(const std::optional<pos_set>& pred,
                            std::span<const reading_token> sentence, std::ptrdiff_t i) {
    if (!pred) return true;
    auto tag = context_tag(sentence, i);
    return tag && pred->contains(*tag);
}

} // namespace detail

/// Apply remove-rules over one sentence until nothing changes. A rule
/// fires on a token only if at least one reading with another tag would
/// survive, so no token is ever emptied. Readings only shrink, which
/// makes the fixpoint reachable and a second run a no-op.
inline void eliminate_readings(std::vector<reading_token>& sentence,
                               std::span<const constraint_rule> rules) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            for (const auto& rule : rules) {
                auto& tok = sentence[i];
                if (!tok.has_tag(rule.target)) continue;
                bool would_retain = false;
                for (const auto& r : tok.readings)
                    if (r.tag != rule.target) would_retain = true;
                if (!would_retain) continue;
                auto idx = static_cast<std::ptrdiff_t>(i);
                if (!detail::context_matches(rule.left, sentence, idx - 1)) continue;
                if (!detail::context_matches(rule.right, sentence, idx + 1)) continue;
                std::erase_if(tok.readings, [&](const reading& r) { return r.tag == rule.target; });
                changed = true;
            }
        }
    }
}

/// Plain-token disambiguation: tag sets in, surviving tag sets out.
inline std::vector<pos_set> disambiguate(const std::vector<pos_set>& token_readings,
                                         std::span<const constraint_rule> rules) {
    std::vector<reading_token> sentence;
    sentence.reserve(token_readings.size());
    for (const auto& tags : token_readings) {
        reading_token t;
        for (pos p : tags.to_vector()) t.readings.push_back({-1, p});
        sentence.push_back(std::move(t));
    }
    eliminate_readings(sentence, rules);
    std::vector<pos_set> out;
    out.reserve(sentence.size());
    for (const auto& t : sentence) out.push_back(t.tag_set());
    return out;
}

} // namespace ctxspell

#endif
