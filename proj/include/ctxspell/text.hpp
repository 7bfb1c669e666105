#ifndef CTXSPELL_TEXT_HPP
#define CTXSPELL_TEXT_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ctxspell {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input data or configuration (files, labels, rule syntax). CLI maps
// these to exit code 2, everything else to 1.
class config_error : public error {
public:
    using error::error;
};

inline bool is_ascii_letter(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }

inline bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }

inline char fold_char(char c) {
    return is_ascii_upper(c) ? static_cast<char>(c - 'A' + 'a') : c;
}

/// ASCII-only case fold; non-ASCII bytes pass through untouched.
inline std::string fold(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(fold_char(c));
    return out;
}

inline bool starts_with_upper(std::string_view s) {
    return !s.empty() && is_ascii_upper(s.front());
}

inline bool starts_with_lower(std::string_view s) {
    return !s.empty() && is_ascii_lower(s.front());
}

/// Letters only; hyphens/apostrophes in a word-form do not count.
inline std::size_t letter_count(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if (is_ascii_letter(c)) ++n;
    return n;
}

/// Word-form shape: ASCII letter runs joined by single internal
/// apostrophes or hyphens ("boss", "co-operate", "don't").
inline bool matches_word_pattern(std::string_view s) {
    if (s.empty()) return false;
    bool prev_letter = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (is_ascii_letter(c)) {
            prev_letter = true;
        } else if (c == '\'' || c == '-') {
            if (!prev_letter) return false;
            if (i + 1 >= s.size() || !is_ascii_letter(s[i + 1])) return false;
            prev_letter = false;
        } else {
            return false;
        }
    }
    return prev_letter;
}

/// Offset of the first invalid UTF-8 byte, or npos if the buffer is valid.
inline std::size_t utf8_invalid_at(std::string_view s) {
    std::size_t i = 0;
    const auto n = s.size();
    while (i < n) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        std::size_t len;
        unsigned cp_min;
        if (b < 0x80) {
            i += 1;
            continue;
        } else if ((b & 0xE0) == 0xC0) {
            len = 2;
            cp_min = 0x80;
        } else if ((b & 0xF0) == 0xE0) {
            len = 3;
            cp_min = 0x800;
        } else if ((b & 0xF8) == 0xF0) {
            len = 4;
            cp_min = 0x10000;
        } else {
            return i;
        }
        if (i + len > n) return i;
        unsigned cp = b & (0xFFu >> (len + 1));
        for (std::size_t k = 1; k < len; ++k) {
            unsigned char cb = static_cast<unsigned char>(s[i + k]);
            if ((cb & 0xC0) != 0x80) return i;
            cp = (cp << 6) | (cb & 0x3Fu);
        }
        if (cp < cp_min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
        i += len;
    }
    return std::string_view::npos;
}

} // namespace ctxspell

#endif
