// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unreal/value.hpp"

namespace unreal {

/// Interpretation of a grammar symbol in linear integer arithmetic.
enum class SymbolKind {
    IntLiteral,
    BoolLiteral,
    Variable,
    Plus,
    Minus,
    IfThenElse,
    Equals,
    GreaterThan,
    GreaterEqual,
    LessThan,
    LessEqual,
    Not,
    And,
    Or,
};

std::string_view symbol_kind_name(SymbolKind kind);

/// A ranked, typed alphabet symbol. The argument-type list doubles as the
/// rank, so `args.size()` is the arity by construction.
struct RankedSymbol {
    std::string name;
    SymbolKind kind = SymbolKind::IntLiteral;
    ScalarType result = ScalarType::Int;
    std::vector<ScalarType> args;
    Integer literal{0};          // IntLiteral
    bool bool_literal = false;   // BoolLiteral
    std::size_t parameter = 0;   // Variable: position in the synthesized function's parameter list

    [[nodiscard]] std::size_t arity() const { return args.size(); }
    [[nodiscard]] bool is_leaf() const { return args.empty(); }
};

using SymbolPtr = std::shared_ptr<const RankedSymbol>;

namespace symbols {
SymbolPtr int_literal(const Integer& value);
SymbolPtr bool_literal(bool value);
SymbolPtr variable(std::string name, std::size_t parameter, ScalarType type);
/// Operator symbol by its SyGuS-lite spelling (`+`, `-`, `ite`, `=`, `>`, `>=`, `<`, `<=`, `not`, `and`, `or`).
/// `ite` takes the branch type. Returns nullptr for unknown spellings.
SymbolPtr op(std::string_view spelling, ScalarType branch_type = ScalarType::Int);
} // namespace symbols

struct Nonterminal {
    std::string name;
    ScalarType type = ScalarType::Int;
};

struct Parameter {
    std::string name;
    ScalarType type = ScalarType::Int;
};

/// (nonterminal, 1-based production index) annotation of a term node.
struct ProductionRef {
    std::size_t nonterminal = 0;
    std::size_t index = 1;
    friend bool operator==(const ProductionRef&, const ProductionRef&) = default;
};

struct Production {
    std::size_t lhs = 0;
    SymbolPtr symbol;
    std::vector<std::size_t> rhs;
    std::size_t index = 1; // 1-based position within the productions of `lhs`

    [[nodiscard]] ProductionRef ref() const { return {lhs, index}; }
};

/// Input to Rtg construction; `rhs` names nonterminals.
struct ProductionDecl {
    std::string lhs;
    SymbolPtr symbol;
    std::vector<std::string> rhs;
};

class GrammarError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Typed regular tree grammar with a fixed production order per nonterminal.
/// The order is normative: it defines the choice-string numbering of terms.
class Rtg {
  public:
    /// Validates the grammar; throws GrammarError naming the offending
    /// production when a rhs nonterminal is undeclared or types disagree.
    Rtg(std::vector<Nonterminal> nonterminals, std::vector<Parameter> parameters, std::string_view start,
        const std::vector<ProductionDecl>& productions);

    [[nodiscard]] const std::vector<Nonterminal>& nonterminals() const { return nonterminals_; }
    [[nodiscard]] const std::vector<Parameter>& parameters() const { return parameters_; }
    [[nodiscard]] std::size_t start() const { return start_; }
    [[nodiscard]] std::span<const Production> productions(std::size_t nonterminal) const {
        return productions_.at(nonterminal);
    }
    [[nodiscard]] const Production& production(ProductionRef ref) const;
    [[nodiscard]] const std::vector<SymbolPtr>& alphabet() const { return alphabet_; }
    [[nodiscard]] std::optional<std::size_t> find_nonterminal(std::string_view name) const;
    [[nodiscard]] const Nonterminal& nonterminal(std::size_t i) const { return nonterminals_.at(i); }
    [[nodiscard]] std::size_t production_count() const;

    /// `Start ::= (+ Start Start) | x | ...` one line per nonterminal.
    [[nodiscard]] std::string to_string() const;

  private:
    std::vector<Nonterminal> nonterminals_;
    std::vector<Parameter> parameters_;
    std::size_t start_ = 0;
    std::vector<std::vector<Production>> productions_;
    std::vector<SymbolPtr> alphabet_;
};

/// Rendering of a production's right-hand side, e.g. `(+ Start Start)` or `x`.
std::string production_rhs_string(const Rtg& grammar, const Production& p);

} // namespace unreal
