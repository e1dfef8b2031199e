// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unreal {

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

std::string to_string(SourcePos pos);

/// Minimal s-expression tree used by the problem reader and by the
/// well-formedness reparse of emitted SMT-LIB2.
class SExpr {
  public:
    static SExpr atom(std::string text, SourcePos pos = {});
    static SExpr list(std::vector<SExpr> items, SourcePos pos = {});

    [[nodiscard]] bool is_atom() const { return is_atom_; }
    [[nodiscard]] bool is_list() const { return !is_atom_; }
    [[nodiscard]] bool is_atom(std::string_view text) const { return is_atom_ && text_ == text; }
    [[nodiscard]] const std::string& text() const { return text_; }
    [[nodiscard]] const std::vector<SExpr>& items() const { return items_; }
    [[nodiscard]] std::size_t size() const { return items_.size(); }
    [[nodiscard]] const SExpr& operator[](std::size_t i) const { return items_.at(i); }
    [[nodiscard]] SourcePos pos() const { return pos_; }

    /// Head symbol of a non-empty list whose first item is an atom.
    [[nodiscard]] std::optional<std::string_view> head() const;

    [[nodiscard]] std::string to_string() const;

  private:
    bool is_atom_ = true;
    std::string text_;
    std::vector<SExpr> items_;
    SourcePos pos_{};
};

class SyntaxError : public std::runtime_error {
  public:
    SyntaxError(const std::string& what, SourcePos pos);
    [[nodiscard]] SourcePos pos() const { return pos_; }

  private:
    SourcePos pos_;
};

/// Reads every top-level s-expression in `text`. `;` starts a line comment.
/// Throws SyntaxError with the line/column of the offending character.
std::vector<SExpr> parse_sexprs(std::string_view text);

/// True for optionally negative decimal numerals.
bool is_numeral(std::string_view text);

} // namespace unreal
