// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include "unreal/sexpr.hpp"

#include <cctype>

namespace unreal {

std::string to_string(SourcePos pos) { return std::to_string(pos.line) + ":" + std::to_string(pos.column); }

SExpr SExpr::atom(std::string text, SourcePos pos) {
    SExpr e;
    e.is_atom_ = true;
    e.text_ = std::move(text);
    e.pos_ = pos;
    return e;
}

SExpr SExpr::list(std::vector<SExpr> items, SourcePos pos) {
    SExpr e;
    e.is_atom_ = false;
    e.items_ = std::move(items);
    e.pos_ = pos;
    return e;
}

std::optional<std::string_view> SExpr::head() const {
    if (is_atom_ || items_.empty() || !items_.front().is_atom()) {
        return std::nullopt;
    }
    return items_.front().text();
}

std::string SExpr::to_string() const {
    if (is_atom_) {
        return text_;
    }
    std::string out = "(";
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i != 0) {
            out += ' ';
        }
        out += items_[i].to_string();
    }
    return out + ")";
}

SyntaxError::SyntaxError(const std::string& what, SourcePos pos)
    : std::runtime_error(unreal::to_string(pos) + ": " + what), pos_(pos) {}

bool is_numeral(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    std::size_t i = text.front() == '-' ? 1 : 0;
    if (i == text.size()) {
        return false;
    }
    for (; i < text.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(text[i])) == 0) {
            return false;
        }
    }
    return true;
}

namespace {

class Reader {
  public:
    explicit Reader(std::string_view text) : text_(text) {}

    std::vector<SExpr> read_all() {
        std::vector<SExpr> out;
        skip_blank();
        while (offset_ < text_.size()) {
            out.push_back(read());
            skip_blank();
        }
        return out;
    }

  private:
    SExpr read() {
        skip_blank();
        if (offset_ >= text_.size()) {
            throw SyntaxError("unexpected end of input", pos_);
        }
        const SourcePos start = pos_;
        const char c = text_[offset_];
        if (c == ')') {
            throw SyntaxError("unexpected ')'", pos_);
        }
        if (c == '(') {
            advance();
            std::vector<SExpr> items;
            for (;;) {
                skip_blank();
                if (offset_ >= text_.size()) {
                    throw SyntaxError("unterminated list opened at " + to_string(start), pos_);
                }
                if (text_[offset_] == ')') {
                    advance();
                    return SExpr::list(std::move(items), start);
                }
                items.push_back(read());
            }
        }
        if (c == '|') {
            advance();
            std::string sym;
            while (offset_ < text_.size() && text_[offset_] != '|') {
                sym += text_[offset_];
                advance();
            }
            if (offset_ >= text_.size()) {
                throw SyntaxError("unterminated quoted symbol", start);
            }
            advance();
            return SExpr::atom(std::move(sym), start);
        }
        if (c == '"') {
            throw SyntaxError("string literals are not supported", start);
        }
        std::string sym;
        while (offset_ < text_.size()) {
            const char d = text_[offset_];
            if (d == '(' || d == ')' || d == ';' || d == '|' || d == '"' ||
                std::isspace(static_cast<unsigned char>(d)) != 0) {
                break;
            }
            if (std::isprint(static_cast<unsigned char>(d)) == 0) {
                throw SyntaxError("invalid character in symbol", pos_);
            }
            sym += d;
            advance();
        }
        return SExpr::atom(std::move(sym), start);
    }

    void skip_blank() {
        while (offset_ < text_.size()) {
            const char c = text_[offset_];
            if (c == ';') {
                while (offset_ < text_.size() && text_[offset_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                advance();
            } else {
                return;
            }
        }
    }

    void advance() {
        if (text_[offset_] == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        ++offset_;
    }

    std::string_view text_;
    std::size_t offset_ = 0;
    SourcePos pos_{};
};

} // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) { return Reader(text).read_all(); }

} // namespace unreal
