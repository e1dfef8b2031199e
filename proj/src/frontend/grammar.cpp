// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include "unreal/grammar.hpp"

#include <algorithm>
#include <map>

namespace unreal {

std::string_view symbol_kind_name(SymbolKind kind) {
    switch (kind) {
    case SymbolKind::IntLiteral: return "IntLiteral";
    case SymbolKind::BoolLiteral: return "BoolLiteral";
    case SymbolKind::Variable: return "Variable";
    case SymbolKind::Plus: return "Plus";
    case SymbolKind::Minus: return "Minus";
    case SymbolKind::IfThenElse: return "IfThenElse";
    case SymbolKind::Equals: return "Equals";
    case SymbolKind::GreaterThan: return "GreaterThan";
    case SymbolKind::GreaterEqual: return "GreaterEqual";
    case SymbolKind::LessThan: return "LessThan";
    case SymbolKind::LessEqual: return "LessEqual";
    case SymbolKind::Not: return "Not";
    case SymbolKind::And: return "And";
    case SymbolKind::Or: return "Or";
    }
    return "?";
}

namespace symbols {

namespace {
SymbolPtr make(std::string name, SymbolKind kind, ScalarType result, std::vector<ScalarType> args) {
    auto s = std::make_shared<RankedSymbol>();
    s->name = std::move(name);
    s->kind = kind;
    s->result = result;
    s->args = std::move(args);
    return s;
}
} // namespace

SymbolPtr int_literal(const Integer& value) {
    auto s = std::make_shared<RankedSymbol>();
    s->name = value.str();
    s->kind = SymbolKind::IntLiteral;
    s->result = ScalarType::Int;
    s->literal = value;
    return s;
}

SymbolPtr bool_literal(bool value) {
    auto s = std::make_shared<RankedSymbol>();
    s->name = value ? "true" : "false";
    s->kind = SymbolKind::BoolLiteral;
    s->result = ScalarType::Bool;
    s->bool_literal = value;
    return s;
}

SymbolPtr variable(std::string name, std::size_t parameter, ScalarType type) {
    auto s = std::make_shared<RankedSymbol>();
    s->name = std::move(name);
    s->kind = SymbolKind::Variable;
    s->result = type;
    s->parameter = parameter;
    return s;
}

SymbolPtr op(std::string_view spelling, ScalarType branch_type) {
    using enum ScalarType;
    if (spelling == "+") return make("+", SymbolKind::Plus, Int, {Int, Int});
    if (spelling == "-") return make("-", SymbolKind::Minus, Int, {Int, Int});
    if (spelling == "ite") return make("ite", SymbolKind::IfThenElse, branch_type, {Bool, branch_type, branch_type});
    if (spelling == "=") return make("=", SymbolKind::Equals, Bool, {Int, Int});
    if (spelling == ">") return make(">", SymbolKind::GreaterThan, Bool, {Int, Int});
    if (spelling == ">=") return make(">=", SymbolKind::GreaterEqual, Bool, {Int, Int});
    if (spelling == "<") return make("<", SymbolKind::LessThan, Bool, {Int, Int});
    if (spelling == "<=") return make("<=", SymbolKind::LessEqual, Bool, {Int, Int});
    if (spelling == "not") return make("not", SymbolKind::Not, Bool, {Bool});
    if (spelling == "and") return make("and", SymbolKind::And, Bool, {Bool, Bool});
    if (spelling == "or") return make("or", SymbolKind::Or, Bool, {Bool, Bool});
    return nullptr;
}

} // namespace symbols

namespace {

bool same_signature(const RankedSymbol& a, const RankedSymbol& b) {
    return a.kind == b.kind && a.result == b.result && a.args == b.args && a.literal == b.literal &&
           a.bool_literal == b.bool_literal && a.parameter == b.parameter;
}

std::string describe(const ProductionDecl& d) {
    std::string out = d.lhs + " ::= ";
    if (d.rhs.empty()) {
        return out + (d.symbol ? d.symbol->name : "?");
    }
    out += "(" + (d.symbol ? d.symbol->name : std::string("?"));
    for (const auto& r : d.rhs) {
        out += " " + r;
    }
    return out + ")";
}

} // namespace

Rtg::Rtg(std::vector<Nonterminal> nonterminals, std::vector<Parameter> parameters, std::string_view start,
         const std::vector<ProductionDecl>& productions)
    : nonterminals_(std::move(nonterminals)), parameters_(std::move(parameters)) {
    if (nonterminals_.empty()) {
        throw GrammarError("grammar declares no nonterminals");
    }
    for (std::size_t i = 0; i < nonterminals_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (nonterminals_[i].name == nonterminals_[j].name) {
                throw GrammarError("nonterminal '" + nonterminals_[i].name + "' declared twice");
            }
        }
    }
    const auto s = find_nonterminal(start);
    if (!s) {
        throw GrammarError("start nonterminal '" + std::string(start) + "' is not declared");
    }
    start_ = *s;
    productions_.resize(nonterminals_.size());

    std::map<std::string, SymbolPtr, std::less<>> by_name;
    for (const auto& decl : productions) {
        const auto lhs = find_nonterminal(decl.lhs);
        if (!lhs) {
            throw GrammarError("production '" + describe(decl) + "': undeclared nonterminal '" + decl.lhs + "'");
        }
        if (!decl.symbol) {
            throw GrammarError("production '" + describe(decl) + "': missing symbol");
        }
        const RankedSymbol& sym = *decl.symbol;
        if (decl.rhs.size() != sym.arity()) {
            throw GrammarError("production '" + describe(decl) + "': symbol '" + sym.name + "' has arity " +
                               std::to_string(sym.arity()));
        }
        if (sym.result != nonterminals_[*lhs].type) {
            throw GrammarError("production '" + describe(decl) + "': symbol '" + sym.name + "' yields " +
                               std::string(unreal::to_string(sym.result)) + " but " + decl.lhs + " has type " +
                               std::string(unreal::to_string(nonterminals_[*lhs].type)));
        }
        if (sym.kind == SymbolKind::Variable) {
            if (sym.parameter >= parameters_.size() || parameters_[sym.parameter].name != sym.name ||
                parameters_[sym.parameter].type != sym.result) {
                throw GrammarError("production '" + describe(decl) + "': '" + sym.name +
                                   "' is not a parameter of the synthesized function");
            }
        }
        Production p;
        p.lhs = *lhs;
        for (std::size_t a = 0; a < decl.rhs.size(); ++a) {
            const auto child = find_nonterminal(decl.rhs[a]);
            if (!child) {
                throw GrammarError("production '" + describe(decl) + "': undeclared nonterminal '" + decl.rhs[a] +
                                   "'");
            }
            if (nonterminals_[*child].type != sym.args[a]) {
                throw GrammarError("production '" + describe(decl) + "': argument " + std::to_string(a + 1) +
                                   " expects " + std::string(unreal::to_string(sym.args[a])) + " but '" + decl.rhs[a] +
                                   "' has type " + std::string(unreal::to_string(nonterminals_[*child].type)));
            }
            p.rhs.push_back(*child);
        }
        auto [it, inserted] = by_name.try_emplace(sym.name, decl.symbol);
        if (!inserted && !same_signature(*it->second, sym)) {
            throw GrammarError("production '" + describe(decl) + "': symbol '" + sym.name +
                               "' used with two different signatures");
        }
        if (inserted) {
            alphabet_.push_back(decl.symbol);
        }
        p.symbol = it->second;
        for (const auto& existing : productions_[*lhs]) {
            if (existing.symbol == p.symbol && existing.rhs == p.rhs) {
                throw GrammarError("production '" + describe(decl) + "' is listed twice");
            }
        }
        p.index = productions_[*lhs].size() + 1;
        productions_[*lhs].push_back(std::move(p));
    }
    for (std::size_t i = 0; i < nonterminals_.size(); ++i) {
        if (productions_[i].empty()) {
            throw GrammarError("nonterminal '" + nonterminals_[i].name + "' has no productions");
        }
    }
}

const Production& Rtg::production(ProductionRef ref) const {
    const auto& list = productions_.at(ref.nonterminal);
    if (ref.index == 0 || ref.index > list.size()) {
        throw std::out_of_range("production index out of range");
    }
    return list[ref.index - 1];
}

std::optional<std::size_t> Rtg::find_nonterminal(std::string_view name) const {
    for (std::size_t i = 0; i < nonterminals_.size(); ++i) {
        if (nonterminals_[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t Rtg::production_count() const {
    std::size_t n = 0;
    for (const auto& list : productions_) {
        n += list.size();
    }
    return n;
}

std::string production_rhs_string(const Rtg& grammar, const Production& p) {
    if (p.rhs.empty()) {
        return p.symbol->name;
    }
    std::string out = "(" + p.symbol->name;
    for (auto r : p.rhs) {
        out += " " + grammar.nonterminal(r).name;
    }
    return out + ")";
}

std::string Rtg::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < nonterminals_.size(); ++i) {
        out += nonterminals_[i].name + " ::= ";
        for (const auto& p : productions_[i]) {
            if (p.index != 1) {
                out += " | ";
            }
            out += production_rhs_string(*this, p);
        }
        out += "\n";
    }
    return out;
}

} // namespace unreal
