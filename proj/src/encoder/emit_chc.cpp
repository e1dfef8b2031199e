// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "unreal/encoder.hpp"
#include "unreal/sexpr.hpp"

namespace unreal {

namespace {

std::string smt_symbol(std::string_view raw) {
    std::string out;
    for (char c : raw) {
        out += std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' ? c : '_';
    }
    return out;
}

std::string smt_sort(ScalarType t) { return std::string(to_string(t)); }

std::string smt_expr(const Expr& e, const std::function<std::string(std::size_t)>& var) {
    auto nary = [&](const char* op) {
        std::string out = std::string("(") + op;
        for (const auto& a : e.args) {
            out += " " + smt_expr(*a, var);
        }
        return out + ")";
    };
    switch (e.kind) {
    case ExprKind::IntConst: return Value(e.int_value).to_smtlib();
    case ExprKind::BoolConst: return e.bool_value ? "true" : "false";
    case ExprKind::Var: return var(e.var);
    case ExprKind::Add: return nary("+");
    case ExprKind::Sub:
    case ExprKind::Neg: return nary("-");
    case ExprKind::Eq: return nary("=");
    case ExprKind::Lt: return nary("<");
    case ExprKind::Le: return nary("<=");
    case ExprKind::Gt: return nary(">");
    case ExprKind::Ge: return nary(">=");
    case ExprKind::Not: return nary("not");
    case ExprKind::And: return nary("and");
    case ExprKind::Or: return nary("or");
    case ExprKind::Implies: return nary("=>");
    case ExprKind::Apply: break;
    }
    throw std::logic_error("application left in a flattened spec");
}

std::string enc(const RankedSymbol& sym, const std::vector<std::string>& args, const std::string& env_arg) {
    auto app = [&](const char* op) {
        std::string out = std::string("(") + op;
        for (const auto& a : args) {
            out += " " + a;
        }
        return out + ")";
    };
    switch (sym.kind) {
    case SymbolKind::IntLiteral: return Value(sym.literal).to_smtlib();
    case SymbolKind::BoolLiteral: return sym.bool_literal ? "true" : "false";
    case SymbolKind::Variable: return env_arg;
    case SymbolKind::Plus: return app("+");
    case SymbolKind::Minus: return app("-");
    case SymbolKind::IfThenElse: return app("ite");
    case SymbolKind::Equals: return app("=");
    case SymbolKind::GreaterThan: return app(">");
    case SymbolKind::GreaterEqual: return app(">=");
    case SymbolKind::LessThan: return app("<");
    case SymbolKind::LessEqual: return app("<=");
    case SymbolKind::Not: return app("not");
    case SymbolKind::And: return app("and");
    case SymbolKind::Or: return app("or");
    }
    return "";
}

} // namespace

std::string emit_chc(const ReachabilityProblem& rp) {
    const ProgramIr& p = rp.program;
    const Rtg& g = *p.grammar;
    const std::size_t cols = p.columns();
    std::vector<std::string> preds;
    for (std::size_t a = 0; a < g.nonterminals().size(); ++a) {
        std::string name = "Reach_" + smt_symbol(g.nonterminal(a).name);
        while (std::find(preds.begin(), preds.end(), name) != preds.end()) {
            name += "_";
        }
        preds.push_back(name);
    }
    std::string out = "; " + rp.name + " on " + std::to_string(p.k) + " example(s)\n(set-logic HORN)\n";
    for (std::size_t a = 0; a < g.nonterminals().size(); ++a) {
        out += "(declare-fun " + preds[a] + " (";
        for (std::size_t c = 0; c < cols; ++c) {
            out += (c ? " " : "") + smt_sort(g.nonterminal(a).type);
        }
        out += ") Bool)\n";
    }
    for (std::size_t a = 0; a < g.nonterminals().size(); ++a) {
        for (const auto& prod : g.productions(a)) {
            out += "; " + g.nonterminal(a).name + " ::= " + production_rhs_string(g, prod) + "\n";
            std::string binders;
            std::string premises;
            for (std::size_t i = 0; i < prod.rhs.size(); ++i) {
                std::string atom = "(" + preds[prod.rhs[i]];
                for (std::size_t c = 0; c < cols; ++c) {
                    const std::string v = "a" + std::to_string(i) + "_" + std::to_string(c);
                    binders += (binders.empty() ? "(" : " (") + v + " " + smt_sort(g.nonterminal(prod.rhs[i]).type) + ")";
                    atom += " " + v;
                }
                premises += (premises.empty() ? "" : " ") + atom + ")";
            }
            std::string head = "(" + preds[a];
            for (std::size_t c = 0; c < cols; ++c) {
                std::vector<std::string> args;
                for (std::size_t i = 0; i < prod.rhs.size(); ++i) {
                    args.push_back("a" + std::to_string(i) + "_" + std::to_string(c));
                }
                std::string env_arg;
                if (prod.symbol->kind == SymbolKind::Variable) {
                    env_arg = p.envs[c][prod.symbol->parameter].to_smtlib();
                }
                head += " " + enc(*prod.symbol, args, env_arg);
            }
            head += ")";
            if (prod.rhs.empty()) {
                out += "(assert " + head + ")\n";
            } else {
                const std::string body = prod.rhs.size() == 1 ? premises : "(and " + premises + ")";
                out += "(assert (forall (" + binders + ") (=> " + body + " " + head + ")))\n";
            }
        }
    }
    // Query: every example satisfied is unreachable.
    const auto ex_vars = p.spec.example_vars();
    std::string binders;
    std::string atom = "(" + preds[g.start()];
    for (std::size_t c = 0; c < cols; ++c) {
        const std::string v = "o" + std::to_string(c);
        binders += (binders.empty() ? "(" : " (") + v + " " + smt_sort(g.nonterminal(g.start()).type) + ")";
        atom += " " + v;
    }
    atom += ")";
    std::string conj = atom;
    for (std::size_t m = 0; m < p.k; ++m) {
        auto name_of = [&](std::size_t var) -> std::string {
            for (std::size_t j = 0; j < p.spec.calls.size(); ++j) {
                if (p.spec.single_call_form && p.spec.calls[j].result == var) {
                    return "o" + std::to_string(p.column(m, j));
                }
            }
            const auto pos = static_cast<std::size_t>(std::find(ex_vars.begin(), ex_vars.end(), var) - ex_vars.begin());
            return p.examples[m].at(pos).to_smtlib();
        };
        std::string psi = smt_expr(*p.spec.body, name_of);
        if (!p.spec.single_call_form) {
            std::string hyps;
            for (const auto& h : p.spec.hypotheses) {
                if (h.kind == Hypothesis::Kind::Call) {
                    hyps += " (= o" + std::to_string(p.column(m, h.index)) + " " +
                            name_of(p.spec.calls[h.index].result) + ")";
                } else {
                    const auto& d = p.spec.definitions[h.index];
                    hyps += " (= " + name_of(d.var) + " " + smt_expr(*d.expr, name_of) + ")";
                }
            }
            psi = "(=> (and" + hyps + ") " + psi + ")";
        }
        conj += " " + psi;
    }
    out += "; query: all examples satisfied\n";
    out += "(assert (forall (" + binders + ") (=> (and " + conj + ") false)))\n";
    out += "(check-sat)\n";
    return out;
}

std::string emit_chc(const Problem& problem, const std::vector<ValueVector>& examples) {
    return emit_chc(build_program(problem, examples));
}

namespace {

class ChcChecker {
  public:
    ChcSummary run(std::string_view text) {
        ChcSummary out;
        try {
            const auto forms = parse_sexprs(text);
            bool logic = false;
            bool check = false;
            for (const auto& f : forms) {
                const auto head = f.head();
                if (!head) throw std::runtime_error("top-level form is not a command: " + f.to_string());
                if (*head == "set-logic") {
                    if (f.size() != 2 || !f[1].is_atom("HORN")) throw std::runtime_error("logic must be HORN");
                    logic = true;
                } else if (*head == "declare-fun") {
                    if (f.size() != 4 || !f[1].is_atom() || !f[2].is_list() || !f[3].is_atom("Bool")) {
                        throw std::runtime_error("malformed declare-fun: " + f.to_string());
                    }
                    std::vector<std::string> sorts;
                    for (const auto& s : f[2].items()) {
                        if (!s.is_atom("Int") && !s.is_atom("Bool")) throw std::runtime_error("bad sort " + s.to_string());
                        sorts.push_back(s.text());
                    }
                    if (preds_.count(f[1].text()) != 0) throw std::runtime_error("predicate declared twice");
                    out.arities.push_back(sorts.size());
                    preds_.emplace(f[1].text(), std::move(sorts));
                    ++out.predicates;
                } else if (*head == "assert") {
                    if (!logic) throw std::runtime_error("assert before set-logic");
                    if (f.size() != 2) throw std::runtime_error("malformed assert");
                    scopes_.clear();
                    if (clause(f[1])) {
                        ++out.queries;
                    } else {
                        ++out.rules;
                    }
                } else if (*head == "check-sat") {
                    check = true;
                } else {
                    throw std::runtime_error("unexpected command " + std::string(*head));
                }
            }
            if (!logic) throw std::runtime_error("missing set-logic");
            if (!check) throw std::runtime_error("missing check-sat");
            out.ok = true;
        } catch (const std::exception& e) {
            out.ok = false;
            out.error = e.what();
        }
        return out;
    }

  private:
    // Returns true for a query (conclusion `false`).
    bool clause(const SExpr& e) {
        if (e.is_list() && e.head() == std::optional<std::string_view>("forall")) {
            if (e.size() != 3 || !e[1].is_list()) throw std::runtime_error("malformed forall");
            for (const auto& b : e[1].items()) {
                if (!b.is_list() || b.size() != 2 || !b[0].is_atom() || !(b[1].is_atom("Int") || b[1].is_atom("Bool"))) {
                    throw std::runtime_error("malformed binder " + b.to_string());
                }
                scopes_[b[0].text()] = b[1].text();
            }
            return clause(e[2]);
        }
        if (e.is_list() && e.head() == std::optional<std::string_view>("=>")) {
            if (e.size() != 3) throw std::runtime_error("malformed implication");
            if (sort_of(e[1]) != "Bool") throw std::runtime_error("premise is not Bool");
            if (e[2].is_atom("false")) return true;
            require_predicate(e[2]);
            return false;
        }
        require_predicate(e);
        return false;
    }

    void require_predicate(const SExpr& e) {
        if (!e.is_list() || !e.head() || preds_.count(std::string(*e.head())) == 0) {
            throw std::runtime_error("clause head is not a predicate application: " + e.to_string());
        }
        sort_of(e);
    }

    std::string sort_of(const SExpr& e) {
        if (e.is_atom()) {
            if (is_numeral(e.text())) return "Int";
            if (e.is_atom("true") || e.is_atom("false")) return "Bool";
            auto it = scopes_.find(e.text());
            if (it == scopes_.end()) throw std::runtime_error("unbound symbol " + e.text());
            return it->second;
        }
        const auto head = e.head();
        if (!head) throw std::runtime_error("malformed term " + e.to_string());
        const std::string h(*head);
        std::vector<std::string> args;
        for (std::size_t i = 1; i < e.size(); ++i) {
            args.push_back(sort_of(e[i]));
        }
        auto all = [&](const char* s) { return std::all_of(args.begin(), args.end(), [s](const auto& a) { return a == s; }); };
        if (auto it = preds_.find(h); it != preds_.end()) {
            if (args != it->second) throw std::runtime_error("predicate " + h + " applied with wrong arity or sorts");
            return "Bool";
        }
        if (h == "+" || h == "-") {
            if (args.empty() || !all("Int")) throw std::runtime_error("ill-sorted " + e.to_string());
            return "Int";
        }
        if (h == "<" || h == "<=" || h == ">" || h == ">=") {
            if (args.size() != 2 || !all("Int")) throw std::runtime_error("ill-sorted " + e.to_string());
            return "Bool";
        }
        if (h == "=") {
            if (args.size() != 2 || args[0] != args[1]) throw std::runtime_error("ill-sorted " + e.to_string());
            return "Bool";
        }
        if (h == "and" || h == "or" || h == "not" || h == "=>") {
            if (args.empty() || !all("Bool")) throw std::runtime_error("ill-sorted " + e.to_string());
            return "Bool";
        }
        if (h == "ite") {
            if (args.size() != 3 || args[0] != "Bool" || args[1] != args[2]) throw std::runtime_error("ill-sorted ite");
            return args[1];
        }
        throw std::runtime_error("unknown function " + h);
    }

    std::map<std::string, std::vector<std::string>> preds_;
    std::map<std::string, std::string> scopes_;
};

} // namespace

ChcSummary check_chc(std::string_view text) { return ChcChecker().run(text); }

} // namespace unreal
