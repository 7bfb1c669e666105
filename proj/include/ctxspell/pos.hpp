#ifndef CTXSPELL_POS_HPP
#define CTXSPELL_POS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ctxspell/text.hpp"

namespace ctxspell {

// Lexical tags come first; PUNCT and BOUND are pseudo-tags usable only in
// rule contexts (punctuation tokens and sentence boundaries).
enum class pos : std::uint8_t {
    noun,
    verb,
    adj,
    adv,
    det,
    pron,
    prep,
    conj,
    num,
    interj,
    proper,
    punct,
    bound,
};

inline constexpr std::size_t pos_count = 13;
inline constexpr std::size_t lexical_pos_count = 11;

inline constexpr std::array<std::string_view, pos_count> pos_names = {
    "N",    "V",      "ADJ",    "ADV",   "DET",   "PRON", "PREP",
    "CONJ", "NUM",    "INTERJ", "PROPER", "PUNCT", "BOUND",
};

inline std::string_view to_string(pos p) { return pos_names[static_cast<std::size_t>(p)]; }

inline bool is_lexical(pos p) { return static_cast<std::size_t>(p) < lexical_pos_count; }

/// Parse a tag name; returns false on unknown names. `allow_pseudo`
/// admits PUNCT/BOUND (rule contexts only).
inline bool parse_pos(std::string_view name, pos& out, bool allow_pseudo = false) {
    std::size_t limit = allow_pseudo ? pos_count : lexical_pos_count;
    for (std::size_t i = 0; i < limit; ++i) {
        if (pos_names[i] == name) {
            out = static_cast<pos>(i);
            return true;
        }
    }
    return false;
}

/// Small set of POS tags backed by a bitmask.
class pos_set {
public:
    constexpr pos_set() = default;

    static pos_set full_lexical() {
        pos_set s;
        s.bits_ = (1u << lexical_pos_count) - 1u;
        return s;
    }

    static pos_set of(std::initializer_list<pos> tags) {
        pos_set s;
        for (pos p : tags) s.insert(p);
        return s;
    }

    void insert(pos p) { bits_ |= bit(p); }
    void erase(pos p) { bits_ &= ~bit(p); }
    bool contains(pos p) const { return (bits_ & bit(p)) != 0; }
    bool empty() const { return bits_ == 0; }
    std::size_t size() const { return static_cast<std::size_t>(__builtin_popcount(bits_)); }

    bool is_subset_of(pos_set other) const { return (bits_ & ~other.bits_) == 0; }

    pos_set union_with(pos_set other) const {
        pos_set s;
        s.bits_ = bits_ | other.bits_;
        return s;
    }

    /// The single member when size()==1.
    pos single() const {
        for (std::size_t i = 0; i < pos_count; ++i)
            if (bits_ & (1u << i)) return static_cast<pos>(i);
        return pos::bound;
    }

    std::vector<pos> to_vector() const {
        std::vector<pos> v;
        for (std::size_t i = 0; i < pos_count; ++i)
            if (bits_ & (1u << i)) v.push_back(static_cast<pos>(i));
        return v;
    }

    std::string to_string() const {
        std::string out;
        for (pos p : to_vector()) {
            if (!out.empty()) out += ',';
            out += ctxspell::to_string(p);
        }
        return out;
    }

    friend bool operator==(pos_set a, pos_set b) { return a.bits_ == b.bits_; }

private:
    static std::uint16_t bit(pos p) { return static_cast<std::uint16_t>(1u << static_cast<std::size_t>(p)); }
    std::uint16_t bits_ = 0;
};

/// Parse a comma-separated tag list ("N,V"). Throws config_error on
/// unknown tags.
inline pos_set parse_pos_set(std::string_view list, bool allow_pseudo = false) {
    pos_set out;
    std::size_t start = 0;
    while (start <= list.size()) {
        std::size_t comma = list.find(',', start);
        std::string_view item = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        pos p;
        if (!parse_pos(item, p, allow_pseudo))
            throw config_error("unknown tag '" + std::string(item) + "'");
        out.insert(p);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace ctxspell

#endif
