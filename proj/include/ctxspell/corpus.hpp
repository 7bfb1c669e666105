#ifndef CTXSPELL_CORPUS_HPP
#define CTXSPELL_CORPUS_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ctxspell/text.hpp"

namespace ctxspell {

enum class token_kind : std::uint8_t { word, punct, number, other };

inline std::string_view to_string(token_kind k) {
    switch (k) {
        case token_kind::word: return "word";
        case token_kind::punct: return "punct";
        case token_kind::number: return "number";
        case token_kind::other: return "other";
    }
    return "other";
}

inline bool parse_token_kind(std::string_view s, token_kind& out) {
    if (s == "word") out = token_kind::word;
    else if (s == "punct") out = token_kind::punct;
    else if (s == "number") out = token_kind::number;
    else if (s == "other") out = token_kind::other;
    else return false;
    return true;
}

enum class split_tag : std::uint8_t { train, test, real, none };

inline std::string_view to_string(split_tag t) {
    switch (t) {
        case split_tag::train: return "train";
        case split_tag::test: return "test";
        case split_tag::real: return "real";
        case split_tag::none: return "none";
    }
    return "none";
}

struct token {
    std::string surface;
    token_kind kind = token_kind::other;
    int sent = 0; // 0-based sentence ordinal within the document
    int tok = 0;  // 0-based ordinal within the sentence
};

struct token_coord {
    std::string doc_id;
    int sent = 0;
    int tok = 0;

    friend bool operator==(const token_coord&, const token_coord&) = default;
    friend bool operator<(const token_coord& a, const token_coord& b) {
        return std::tie(a.doc_id, a.sent, a.tok) < std::tie(b.doc_id, b.sent, b.tok);
    }
    std::string to_string() const {
        return doc_id + ":" + std::to_string(sent) + ":" + std::to_string(tok);
    }
};

// Flat token stream with the raw inter-token bytes kept so the original
// text (or a corrected variant) can be re-emitted byte for byte.
// separators has tokens.size()+1 entries: before the first token, between
// each pair, and after the last.
struct document {
    std::string doc_id;
    std::string source_path;
    split_tag split = split_tag::none;
    std::vector<token> tokens;
    std::vector<std::string> separators;

    int sentence_count() const { return tokens.empty() ? 0 : tokens.back().sent + 1; }

    std::span<const token> sentence(int s) const {
        std::size_t b = 0;
        while (b < tokens.size() && tokens[b].sent != s) ++b;
        std::size_t e = b;
        while (e < tokens.size() && tokens[e].sent == s) ++e;
        return {tokens.data() + b, e - b};
    }

    const token* find(int sent, int tok) const {
        for (const auto& t : tokens)
            if (t.sent == sent && t.tok == tok) return &t;
        return nullptr;
    }

    token* find(int sent, int tok) {
        for (auto& t : tokens)
            if (t.sent == sent && t.tok == tok) return &t;
        return nullptr;
    }
};

struct corpus {
    std::vector<document> documents;

    const document* find(std::string_view doc_id) const {
        for (const auto& d : documents)
            if (d.doc_id == doc_id) return &d;
        return nullptr;
    }

    document* find(std::string_view doc_id) {
        for (auto& d : documents)
            if (d.doc_id == doc_id) return &d;
        return nullptr;
    }

    std::size_t token_count() const {
        std::size_t n = 0;
        for (const auto& d : documents) n += d.tokens.size();
        return n;
    }

    std::size_t word_count() const {
        std::size_t n = 0;
        for (const auto& d : documents)
            for (const auto& t : d.tokens)
                if (t.kind == token_kind::word) ++n;
        return n;
    }

    std::size_t sentence_count() const {
        std::size_t n = 0;
        for (const auto& d : documents) n += static_cast<std::size_t>(d.sentence_count());
        return n;
    }
};

struct raw_token {
    std::string surface;
    token_kind kind;
};

struct tokenized_text {
    std::vector<raw_token> tokens;
    std::vector<std::string> separators; // tokens.size()+1
};

/// Split UTF-8 text into word/punct/number/other tokens, recording every
/// non-token byte in `separators` so that detokenize() round-trips exactly.
/// Throws config_error naming the byte offset on invalid UTF-8.
inline tokenized_text tokenize(std::string_view text) {
    if (auto off = utf8_invalid_at(text); off != std::string_view::npos)
        throw config_error("invalid UTF-8 at byte offset " + std::to_string(off));

    tokenized_text out;
    std::string sep;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto flush = [&](std::string surface, token_kind kind) {
        out.separators.push_back(std::move(sep));
        sep.clear();
        out.tokens.push_back({std::move(surface), kind});
    };

    while (i < n) {
        char c = text[i];
        if (is_ascii_letter(c)) {
            std::size_t start = i;
            while (i < n) {
                if (is_ascii_letter(text[i])) {
                    ++i;
                } else if ((text[i] == '\'' || text[i] == '-') && i + 1 < n &&
                           is_ascii_letter(text[i + 1]) && is_ascii_letter(text[i - 1])) {
                    ++i; // internal joiner
                } else {
                    break;
                }
            }
            flush(std::string(text.substr(start, i - start)), token_kind::word);
        } else if (is_ascii_digit(c)) {
            std::size_t start = i;
            while (i < n && is_ascii_digit(text[i])) ++i;
            flush(std::string(text.substr(start, i - start)), token_kind::number);
        } else if (static_cast<unsigned char>(c) >= 0x80) {
            std::size_t start = i;
            while (i < n && static_cast<unsigned char>(text[i]) >= 0x80) ++i;
            flush(std::string(text.substr(start, i - start)), token_kind::other);
        } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' ||
                   static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
            sep.push_back(c);
            ++i;
        } else {
            flush(std::string(1, c), token_kind::punct);
            ++i;
        }
    }
    out.separators.push_back(std::move(sep));
    return out;
}

inline std::string detokenize(const tokenized_text& t) {
    std::string out = t.separators.empty() ? std::string() : t.separators[0];
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
        out += t.tokens[i].surface;
        out += t.separators[i + 1];
    }
    return out;
}

inline std::string detokenize(const document& d) {
    std::string out = d.separators.empty() ? std::string() : d.separators[0];
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
        out += d.tokens[i].surface;
        out += d.separators[i + 1];
    }
    return out;
}

inline bool is_sentence_final_punct(const raw_token& t) {
    return t.kind == token_kind::punct &&
           (t.surface == "." || t.surface == "!" || t.surface == "?");
}

namespace detail {
inline bool has_whitespace(std::string_view s) {
    for (char c : s)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') return true;
    return false;
}
} // namespace detail

/// Build a document from raw text. Sentences end at ./!/? followed by
/// whitespace and an uppercase-initial token, or at end of input.
inline document make_document(std::string_view text, std::string doc_id, std::string source_path,
                              split_tag split = split_tag::none) {
    tokenized_text tt = tokenize(text);
    document d;
    d.doc_id = std::move(doc_id);
    d.source_path = std::move(source_path);
    d.split = split;
    d.separators = std::move(tt.separators);

    int sent = 0, tok = 0;
    for (std::size_t i = 0; i < tt.tokens.size(); ++i) {
        d.tokens.push_back({std::move(tt.tokens[i].surface), tt.tokens[i].kind, sent, tok});
        ++tok;
        bool boundary = false;
        if (is_sentence_final_punct({d.tokens.back().surface, d.tokens.back().kind})) {
            if (i + 1 == tt.tokens.size()) {
                boundary = true;
            } else if (detail::has_whitespace(d.separators[i + 1]) &&
                       starts_with_upper(tt.tokens[i + 1].surface)) {
                boundary = true;
            }
        }
        if (boundary) {
            ++sent;
            tok = 0;
        }
    }
    return d;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {
inline std::string stem_of(std::string_view path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string_view base = slash == std::string_view::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.rfind('.');
    if (dot != std::string_view::npos && dot > 0) base = base.substr(0, dot);
    return std::string(base);
}
} // namespace detail

/// One document per file; doc_id is the file stem.
inline corpus ingest_corpus(const std::vector<std::string>& paths, split_tag split) {
    if (paths.empty()) throw config_error("no input files to ingest");
    corpus c;
    for (const auto& p : paths) {
        std::string doc_id = detail::stem_of(p);
        if (c.find(doc_id)) throw config_error("duplicate document id: " + doc_id);
        try {
            c.documents.push_back(make_document(read_file(p), doc_id, p, split));
        } catch (const config_error& e) {
            throw config_error(p + ": " + e.what());
        }
    }
    return c;
}

// --- canonical dump: doc_id <TAB> sent <TAB> tok <TAB> kind <TAB> surface ---

inline void write_corpus_dump(std::ostream& os, const corpus& c) {
    for (const auto& d : c.documents)
        for (const auto& t : d.tokens)
            os << d.doc_id << '\t' << t.sent << '\t' << t.tok << '\t' << to_string(t.kind) << '\t'
               << t.surface << '\n';
}

/// Parse a dump back into a corpus. Separators are not stored in dumps;
/// they are reset to single spaces, which is fine for evaluation (only
/// coordinates and surfaces matter there).
inline corpus read_corpus_dump(std::istream& is, split_tag split = split_tag::none) {
    corpus c;
    document* cur = nullptr;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string fields[5];
        std::size_t start = 0;
        for (int f = 0; f < 4; ++f) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos)
                throw config_error("corpus dump line " + std::to_string(lineno) + ": expected 5 fields");
            fields[f] = line.substr(start, tab - start);
            start = tab + 1;
        }
        fields[4] = line.substr(start);

        token t;
        t.surface = fields[4];
        if (t.surface.empty())
            throw config_error("corpus dump line " + std::to_string(lineno) + ": empty surface");
        if (!parse_token_kind(fields[3], t.kind))
            throw config_error("corpus dump line " + std::to_string(lineno) + ": bad kind '" + fields[3] + "'");
        try {
            t.sent = std::stoi(fields[1]);
            t.tok = std::stoi(fields[2]);
        } catch (const std::exception&) {
            throw config_error("corpus dump line " + std::to_string(lineno) + ": bad coordinates");
        }

        if (!cur || cur->doc_id != fields[0]) {
            if (c.find(fields[0]))
                throw config_error("corpus dump line " + std::to_string(lineno) +
                                   ": document '" + fields[0] + "' is not contiguous");
            c.documents.push_back({});
            cur = &c.documents.back();
            cur->doc_id = fields[0];
            cur->split = split;
            cur->separators.push_back("");
        }
        // dense-coordinate check
        int expect_sent = cur->tokens.empty() ? 0 : cur->tokens.back().sent;
        int expect_tok = cur->tokens.empty() ? 0 : cur->tokens.back().tok + 1;
        if (!(t.sent == expect_sent && t.tok == expect_tok) &&
            !(t.sent == expect_sent + 1 && t.tok == 0))
            throw config_error("corpus dump line " + std::to_string(lineno) + ": non-dense coordinates");
        cur->tokens.push_back(std::move(t));
        cur->separators.push_back(" ");
    }
    for (auto& d : c.documents)
        if (!d.separators.empty()) d.separators.back() = "";
    return c;
}

inline corpus read_corpus_dump_file(const std::string& path, split_tag split = split_tag::none) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot read corpus dump: " + path);
    try {
        return read_corpus_dump(in, split);
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

} // namespace ctxspell

#endif
