// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unreal/grammar.hpp"
#include "unreal/value.hpp"

namespace unreal {

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Ranked tree over a grammar alphabet. Every node remembers the production
/// that built it; subtrees are shared, never mutated.
class Term {
  public:
    Term(SymbolPtr symbol, std::vector<TermPtr> children, ProductionRef produced_by);
    ~Term();
    Term(const Term&) = delete;
    Term& operator=(const Term&) = delete;

    [[nodiscard]] const RankedSymbol& symbol() const { return *symbol_; }
    [[nodiscard]] const SymbolPtr& symbol_ptr() const { return symbol_; }
    [[nodiscard]] const std::vector<TermPtr>& children() const { return children_; }
    [[nodiscard]] ProductionRef produced_by() const { return produced_by_; }
    /// Node count.
    [[nodiscard]] std::size_t size() const { return size_; }

  private:
    SymbolPtr symbol_;
    std::vector<TermPtr> children_;
    ProductionRef produced_by_;
    std::size_t size_;
};

class TermError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Builds a node for `ref`, checking that the children were produced by the
/// production's rhs nonterminals.
TermPtr make_term(const Rtg& grammar, ProductionRef ref, std::vector<TermPtr> children = {});

/// Finds the production of `nonterminal` with the given symbol name and
/// builds the node; throws TermError if there is none.
TermPtr make_term(const Rtg& grammar, std::size_t nonterminal, std::string_view symbol,
                  std::vector<TermPtr> children = {});

/// Structural equality including production annotations.
bool equal(const Term& a, const Term& b);

/// `(+ x 1)` style rendering.
std::string to_string(const Term& t);

/// Applies one symbol to already evaluated arguments. Variables read `env`.
Value apply_symbol(const RankedSymbol& s, std::span<const Value> args, std::span<const Value> env);

/// LIA semantics; `env` binds the synthesized function's parameters by position.
Value eval(const Term& t, std::span<const Value> env);

/// Pointwise evaluation on a list of environments.
ValueVector eval_vector(const Term& t, std::span<const ValueVector> envs);

/// A sequence of binary choices in consumption order. Displayed as a
/// base-2 numeral whose rightmost digit is consumed first.
class ChoiceString {
  public:
    ChoiceString() = default;
    explicit ChoiceString(std::vector<bool> bits) : bits_(std::move(bits)) {}

    /// Bits of `n`, least significant first, without leading zeros.
    static ChoiceString from_integer(const Integer& n);
    /// Parses a base-2 numeral (rightmost digit first).
    static ChoiceString from_numeral(std::string_view digits);

    [[nodiscard]] const std::vector<bool>& bits() const { return bits_; }
    [[nodiscard]] std::size_t size() const { return bits_.size(); }
    [[nodiscard]] bool empty() const { return bits_.empty(); }
    [[nodiscard]] bool operator[](std::size_t i) const { return i < bits_.size() && bits_[i]; }

    [[nodiscard]] Integer to_integer() const;
    /// Numeral with all stored digits, including leading zeros; "" when empty.
    [[nodiscard]] std::string to_numeral() const;
    /// `padding` appended on the numeral's left, i.e. consumed afterwards.
    [[nodiscard]] ChoiceString padded(const ChoiceString& padding) const;
    /// First `n` consumed bits.
    [[nodiscard]] ChoiceString prefix(std::size_t n) const;

    friend bool operator==(const ChoiceString&, const ChoiceString&) = default;

  private:
    std::vector<bool> bits_;
};

/// `nextbit`: reads LSB-first and yields 0 forever once exhausted.
class BitReader {
  public:
    explicit BitReader(const ChoiceString& bits) : bits_(&bits) {}
    bool next() { return (*bits_)[read_++]; }
    /// Number of bits read so far, including reads past the end.
    [[nodiscard]] std::size_t consumed() const { return read_; }

  private:
    const ChoiceString* bits_;
    std::size_t read_ = 0;
};

/// Code of choosing production `index` (1-based) out of `count`, in
/// consumption order: index-1 zeros then a one, or count-1 zeros for the
/// last production. A single production has the empty code.
std::vector<bool> production_code(std::size_t index, std::size_t count);

/// Production selected by reading codes from `reader`.
std::size_t read_production(BitReader& reader, std::size_t count);

/// #(e): the codes of the pre-order nodes, first node consumed first.
/// Throws TermError when the annotations are not a derivation in `grammar`.
ChoiceString encode_number(const Term& t, const Rtg& grammar);

class DecodeBudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Decoded {
    TermPtr term;
    std::size_t consumed = 0;
};

inline constexpr std::size_t default_node_budget = 1'000'000;

/// Top-down, left-to-right generation driven by `bits`. Throws
/// DecodeBudgetExceeded (depth exceeded) once more than `node_budget` nodes
/// would be generated.
Decoded decode(const ChoiceString& bits, const Rtg& grammar, std::size_t start,
               std::size_t node_budget = default_node_budget);

/// Every term of `nonterminal` with at most `max_nodes` nodes, once each,
/// ordered by node count, then production order, then children
/// lexicographically.
std::vector<TermPtr> enumerate_terms(const Rtg& grammar, std::size_t nonterminal, std::size_t max_nodes);

/// Streaming form; `visit` returns false to stop early.
void for_each_term(const Rtg& grammar, std::size_t nonterminal, std::size_t max_nodes,
                   const std::function<bool(const TermPtr&)>& visit);

} // namespace unreal
