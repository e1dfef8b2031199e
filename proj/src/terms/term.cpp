// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <utility>

#include "unreal/terms.hpp"

namespace unreal {

Term::Term(SymbolPtr symbol, std::vector<TermPtr> children, ProductionRef produced_by)
    : symbol_(std::move(symbol)), children_(std::move(children)), produced_by_(produced_by), size_(1) {
    for (const auto& c : children_) {
        size_ += c->size();
    }
}

// Iterative teardown: deep decoded terms would overflow the stack otherwise.
Term::~Term() {
    std::vector<TermPtr> pending = std::move(children_);
    while (!pending.empty()) {
        TermPtr t = std::move(pending.back());
        pending.pop_back();
        if (t && t.use_count() == 1) {
            auto& kids = const_cast<Term&>(*t).children_;
            for (auto& k : kids) {
                pending.push_back(std::move(k));
            }
            kids.clear();
        }
    }
}

TermPtr make_term(const Rtg& grammar, ProductionRef ref, std::vector<TermPtr> children) {
    const Production& p = grammar.production(ref);
    if (children.size() != p.rhs.size()) {
        throw TermError("production '" + production_rhs_string(grammar, p) + "' expects " +
                        std::to_string(p.rhs.size()) + " children");
    }
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (!children[i] || children[i]->produced_by().nonterminal != p.rhs[i]) {
            throw TermError("child " + std::to_string(i + 1) + " of '" + production_rhs_string(grammar, p) +
                            "' is not derived from " + grammar.nonterminal(p.rhs[i]).name);
        }
    }
    return std::make_shared<const Term>(p.symbol, std::move(children), ref);
}

TermPtr make_term(const Rtg& grammar, std::size_t nonterminal, std::string_view symbol, std::vector<TermPtr> children) {
    for (const auto& p : grammar.productions(nonterminal)) {
        if (p.symbol->name != symbol || p.rhs.size() != children.size()) {
            continue;
        }
        bool match = true;
        for (std::size_t i = 0; i < children.size(); ++i) {
            match = match && children[i] && children[i]->produced_by().nonterminal == p.rhs[i];
        }
        if (match) {
            return make_term(grammar, p.ref(), std::move(children));
        }
    }
    throw TermError("no production " + grammar.nonterminal(nonterminal).name + " ::= " + std::string(symbol) +
                    " with matching children");
}

bool equal(const Term& a, const Term& b) {
    std::vector<std::pair<const Term*, const Term*>> todo{{&a, &b}};
    while (!todo.empty()) {
        auto [x, y] = todo.back();
        todo.pop_back();
        if (x == y) {
            continue;
        }
        if (!(x->produced_by() == y->produced_by()) || x->symbol().name != y->symbol().name ||
            x->children().size() != y->children().size() || x->size() != y->size()) {
            return false;
        }
        for (std::size_t i = 0; i < x->children().size(); ++i) {
            todo.emplace_back(x->children()[i].get(), y->children()[i].get());
        }
    }
    return true;
}

namespace {

// Post-order walk with an explicit stack; `leave` gets each node once its
// children have been left.
template <class Leave>
void post_order(const Term& root, Leave&& leave) {
    struct Frame {
        const Term* t;
        std::size_t next;
    };
    std::vector<Frame> stack{{&root, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.t->children().size()) {
            const Term* child = f.t->children()[f.next].get();
            ++f.next;
            stack.push_back({child, 0});
            continue;
        }
        const Term* done = f.t;
        stack.pop_back();
        leave(*done);
    }
}

} // namespace

std::string to_string(const Term& t) {
    std::vector<std::string> parts;
    post_order(t, [&](const Term& n) {
        const auto& s = n.symbol();
        const std::size_t k = n.children().size();
        if (k == 0) {
            parts.push_back(s.kind == SymbolKind::IntLiteral ? Value(s.literal).to_smtlib() : s.name);
            return;
        }
        std::string out = "(" + s.name;
        for (std::size_t i = parts.size() - k; i < parts.size(); ++i) {
            out += " " + parts[i];
        }
        out += ")";
        parts.resize(parts.size() - k);
        parts.push_back(std::move(out));
    });
    return parts.back();
}

Value apply_symbol(const RankedSymbol& s, std::span<const Value> args, std::span<const Value> env) {
    switch (s.kind) {
    case SymbolKind::IntLiteral: return Value(s.literal);
    case SymbolKind::BoolLiteral: return Value(s.bool_literal);
    case SymbolKind::Variable: return env[s.parameter];
    case SymbolKind::Plus: return Value(Integer(args[0].as_int() + args[1].as_int()));
    case SymbolKind::Minus: return Value(Integer(args[0].as_int() - args[1].as_int()));
    case SymbolKind::IfThenElse: return args[0].as_bool() ? args[1] : args[2];
    case SymbolKind::Equals: return Value(args[0] == args[1]);
    case SymbolKind::GreaterThan: return Value(args[0].as_int() > args[1].as_int());
    case SymbolKind::GreaterEqual: return Value(args[0].as_int() >= args[1].as_int());
    case SymbolKind::LessThan: return Value(args[0].as_int() < args[1].as_int());
    case SymbolKind::LessEqual: return Value(args[0].as_int() <= args[1].as_int());
    case SymbolKind::Not: return Value(!args[0].as_bool());
    case SymbolKind::And: return Value(args[0].as_bool() && args[1].as_bool());
    case SymbolKind::Or: return Value(args[0].as_bool() || args[1].as_bool());
    }
    throw std::logic_error("unknown symbol kind");
}

Value eval(const Term& t, std::span<const Value> env) {
    std::vector<Value> values;
    post_order(t, [&](const Term& n) {
        const std::size_t k = n.children().size();
        Value v = apply_symbol(n.symbol(), std::span<const Value>(values).last(k), env);
        values.resize(values.size() - k);
        values.push_back(std::move(v));
    });
    return values.back();
}

ValueVector eval_vector(const Term& t, std::span<const ValueVector> envs) {
    ValueVector out;
    out.reserve(envs.size());
    for (const auto& env : envs) {
        out.push_back(eval(t, env));
    }
    return out;
}

} // namespace unreal
