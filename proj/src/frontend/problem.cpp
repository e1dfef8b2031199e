// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include "unreal/problem.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace unreal {

FrontendError::FrontendError(Kind kind, const std::string& what, std::optional<SourcePos> pos)
    : std::runtime_error(std::string(unreal::to_string(kind)) + " error" +
                         (pos ? " at " + unreal::to_string(*pos) : std::string()) + ": " + what),
      kind_(kind), pos_(pos) {}

std::string_view to_string(FrontendError::Kind kind) {
    switch (kind) {
    case FrontendError::Kind::Syntax: return "syntax";
    case FrontendError::Kind::Type: return "type";
    case FrontendError::Kind::UnsupportedLogic: return "unsupported-logic";
    case FrontendError::Kind::Unsupported: return "unsupported";
    }
    return "?";
}

namespace {

using Kind = FrontendError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& what, const SExpr& at) { throw FrontendError(kind, what, at.pos()); }

ScalarType parse_sort(const SExpr& e) {
    if (e.is_atom("Int")) return ScalarType::Int;
    if (e.is_atom("Bool")) return ScalarType::Bool;
    fail(Kind::Unsupported, "unsupported sort '" + e.to_string() + "'", e);
}

const std::string& expect_symbol(const SExpr& e, const char* what) {
    if (!e.is_atom() || is_numeral(e.text())) {
        fail(Kind::Syntax, std::string("expected ") + what + ", got '" + e.to_string() + "'", e);
    }
    return e.text();
}

// Literal value of a numeral atom or `(- n)`.
std::optional<Integer> literal_of(const SExpr& e) {
    if (e.is_atom() && is_numeral(e.text())) {
        return Integer(e.text());
    }
    if (e.is_list() && e.size() == 2 && e[0].is_atom("-") && e[1].is_atom() && is_numeral(e[1].text()) &&
        e[1].text().front() != '-') {
        return -Integer(e[1].text());
    }
    return std::nullopt;
}

struct GrammarBuilder {
    std::vector<Nonterminal> nonterminals;
    std::vector<Parameter> params;
    std::vector<ProductionDecl> decls;
    std::map<std::string, SExpr, std::less<>> origin; // declaration site per nonterminal
    std::size_t aux_counter = 0;

    std::optional<std::size_t> find_nt(std::string_view name) const {
        for (std::size_t i = 0; i < nonterminals.size(); ++i) {
            if (nonterminals[i].name == name) return i;
        }
        return std::nullopt;
    }

    std::optional<std::size_t> find_param(std::string_view name) const {
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (params[i].name == name) return i;
        }
        return std::nullopt;
    }

    bool name_taken(std::string_view name) const { return find_nt(name) || find_param(name); }

    std::string fresh_name(const std::string& lhs) {
        std::string name;
        do {
            name = lhs + "_aux" + std::to_string(++aux_counter);
        } while (name_taken(name));
        return name;
    }

    // Type of the value a rule denotes, without building anything.
    ScalarType rule_type(const SExpr& r) const {
        if (literal_of(r)) return ScalarType::Int;
        if (r.is_atom("true") || r.is_atom("false")) return ScalarType::Bool;
        if (r.is_atom()) {
            if (auto p = find_param(r.text())) return params[*p].type;
            if (auto n = find_nt(r.text())) return nonterminals[*n].type;
            fail(Kind::Type, "unknown symbol '" + r.text() + "' in grammar", r);
        }
        const auto head = r.head();
        if (!head) fail(Kind::Syntax, "malformed grammar rule '" + r.to_string() + "'", r);
        if (*head == "ite") {
            if (r.size() != 4) fail(Kind::Type, "'ite' takes 3 arguments in '" + r.to_string() + "'", r);
            return rule_type(r[2]);
        }
        const auto sym = symbols::op(*head);
        if (!sym) fail(Kind::Unsupported, "unsupported grammar operator '" + std::string(*head) + "'", r);
        return sym->result;
    }

    // Adds the production `lhs -> rule` and returns nothing; nested
    // arguments become auxiliary nonterminals.
    void add_rule(const std::string& lhs, ScalarType lhs_type, const SExpr& r) {
        ProductionDecl decl;
        decl.lhs = lhs;
        if (auto lit = literal_of(r)) {
            decl.symbol = symbols::int_literal(*lit);
        } else if (r.is_atom("true") || r.is_atom("false")) {
            decl.symbol = symbols::bool_literal(r.is_atom("true"));
        } else if (r.is_atom()) {
            if (auto p = find_param(r.text())) {
                decl.symbol = symbols::variable(params[*p].name, *p, params[*p].type);
            } else if (find_nt(r.text())) {
                fail(Kind::Unsupported, "unit production '" + lhs + " ::= " + r.text() + "' is not supported", r);
            } else {
                fail(Kind::Type, "production of '" + lhs + "' uses undeclared nonterminal or variable '" + r.text() +
                                     "'",
                     r);
            }
        } else {
            const auto head = r.head();
            if (!head) fail(Kind::Syntax, "malformed grammar rule '" + r.to_string() + "'", r);
            ScalarType branch = ScalarType::Int;
            if (*head == "ite") {
                branch = rule_type(r);
                if (branch == ScalarType::Bool) {
                    fail(Kind::Unsupported, "'ite' over Bool branches is not supported in '" + r.to_string() + "'", r);
                }
            }
            decl.symbol = symbols::op(*head, branch);
            if (!decl.symbol) {
                fail(Kind::Unsupported, "unsupported grammar operator '" + std::string(*head) + "'", r);
            }
            if (r.size() - 1 != decl.symbol->arity()) {
                fail(Kind::Type,
                     "production '" + lhs + " ::= " + r.to_string() + "': '" + std::string(*head) + "' takes " +
                         std::to_string(decl.symbol->arity()) + " arguments",
                     r);
            }
            for (std::size_t a = 1; a < r.size(); ++a) {
                const SExpr& arg = r[a];
                if (arg.is_atom() && find_nt(arg.text())) {
                    decl.rhs.push_back(arg.text());
                    continue;
                }
                const ScalarType t = rule_type(arg);
                const std::string aux = fresh_name(lhs);
                nonterminals.push_back({aux, t});
                origin.emplace(aux, arg);
                add_rule(aux, t, arg);
                decl.rhs.push_back(aux);
            }
        }
        if (decl.symbol->result != lhs_type) {
            fail(Kind::Type,
                 "production '" + lhs + " ::= " + r.to_string() + "' yields " +
                     std::string(to_string(decl.symbol->result)) + " but '" + lhs + "' has type " +
                     std::string(to_string(lhs_type)),
                 r);
        }
        decls.push_back(std::move(decl));
    }
};

class ProblemParser {
  public:
    explicit ProblemParser(std::string name) { problem_.name = std::move(name); }

    Problem run(std::string_view source) {
        std::vector<SExpr> forms;
        try {
            forms = parse_sexprs(source);
        } catch (const SyntaxError& e) {
            throw FrontendError(Kind::Syntax, e.what(), e.pos());
        }
        std::vector<const SExpr*> constraints;
        bool have_logic = false;
        for (const auto& form : forms) {
            const auto head = form.head();
            if (!head) fail(Kind::Syntax, "expected a command, got '" + form.to_string() + "'", form);
            if (*head == "set-logic") {
                if (form.size() != 2 || !form[1].is_atom()) fail(Kind::Syntax, "malformed set-logic", form);
                if (form[1].text() != "LIA") {
                    fail(Kind::UnsupportedLogic, "logic '" + form[1].text() + "' is not supported (only LIA)", form);
                }
                have_logic = true;
            } else if (*head == "synth-fun") {
                if (problem_.grammar) fail(Kind::Unsupported, "more than one synth-fun", form);
                synth_fun(form);
            } else if (*head == "declare-var") {
                declare_var(form);
            } else if (*head == "constraint") {
                if (form.size() != 2) fail(Kind::Syntax, "constraint takes one formula", form);
                constraints.push_back(&form[1]);
            } else if (*head == "check-synth") {
                if (form.size() != 1) fail(Kind::Syntax, "check-synth takes no arguments", form);
            } else {
                fail(Kind::Unsupported, "unsupported command '" + std::string(*head) + "'", form);
            }
        }
        if (!have_logic) throw FrontendError(Kind::Syntax, "missing (set-logic LIA)");
        if (!problem_.grammar) throw FrontendError(Kind::Syntax, "missing synth-fun");
        if (constraints.empty()) throw FrontendError(Kind::Syntax, "missing constraint");
        std::vector<ExprPtr> parts;
        for (const auto* c : constraints) {
            auto e = expr(*c);
            if (e->type != ScalarType::Bool) fail(Kind::Type, "constraint '" + c->to_string() + "' is not Bool", *c);
            parts.push_back(std::move(e));
        }
        problem_.constraint = parts.size() == 1 ? parts.front() : expr::make(ExprKind::And, std::move(parts));
        if (!has_apply(*problem_.constraint)) {
            throw FrontendError(Kind::Type, "constraints never mention '" + problem_.function_name + "'");
        }
        problem_.spec = flatten_spec(problem_.constraint, problem_.input_vars, problem_.function_name);
        return std::move(problem_);
    }

  private:
    void synth_fun(const SExpr& form) {
        if (form.size() != 5 && form.size() != 6) {
            fail(Kind::Syntax, "synth-fun expects a name, parameters, a sort and a grammar", form);
        }
        problem_.function_name = expect_symbol(form[1], "function name");
        if (!form[2].is_list()) fail(Kind::Syntax, "expected parameter list", form[2]);
        GrammarBuilder b;
        for (const auto& p : form[2].items()) {
            if (!p.is_list() || p.size() != 2) fail(Kind::Syntax, "malformed parameter '" + p.to_string() + "'", p);
            const auto& pname = expect_symbol(p[0], "parameter name");
            if (b.find_param(pname)) fail(Kind::Type, "parameter '" + pname + "' declared twice", p);
            b.params.push_back({pname, parse_sort(p[1])});
        }
        problem_.return_type = parse_sort(form[3]);

        // v1: a single list of (NT Sort (rules)); v2: predeclared (NT Sort) list first.
        const SExpr& rules = form[form.size() - 1];
        if (!rules.is_list() || rules.size() == 0) fail(Kind::Syntax, "expected grammar", rules);
        if (form.size() == 6) {
            const SExpr& decl = form[4];
            if (!decl.is_list() || decl.size() != rules.size()) {
                fail(Kind::Syntax, "grammar predeclaration does not match its rule list", decl);
            }
            for (std::size_t i = 0; i < decl.size(); ++i) {
                if (!decl[i].is_list() || decl[i].size() != 2) fail(Kind::Syntax, "malformed predeclaration", decl[i]);
                if (!rules[i].is_list() || rules[i].size() != 3 || rules[i][0].text() != decl[i][0].text()) {
                    fail(Kind::Syntax, "grammar rule list does not follow its predeclaration order", rules[i]);
                }
            }
        }
        for (const auto& nt : rules.items()) {
            if (!nt.is_list() || nt.size() != 3 || !nt[2].is_list()) {
                fail(Kind::Syntax, "expected (Nonterminal Sort (rules...)), got '" + nt.to_string() + "'", nt);
            }
            const auto& name = expect_symbol(nt[0], "nonterminal name");
            if (b.find_param(name)) fail(Kind::Type, "'" + name + "' is both a parameter and a nonterminal", nt[0]);
            if (b.find_nt(name)) fail(Kind::Type, "nonterminal '" + name + "' declared twice", nt[0]);
            b.nonterminals.push_back({name, parse_sort(nt[1])});
            b.origin.emplace(name, nt);
        }
        const std::size_t declared = b.nonterminals.size();
        for (std::size_t i = 0; i < declared; ++i) {
            const SExpr& nt = rules[i];
            if (nt[2].size() == 0) fail(Kind::Type, "nonterminal '" + nt[0].text() + "' has no productions", nt);
            const Nonterminal current = b.nonterminals[i];
            for (const auto& r : nt[2].items()) {
                b.add_rule(current.name, current.type, r);
            }
        }
        const std::string start = b.nonterminals.front().name;
        if (b.nonterminals.front().type != problem_.return_type) {
            fail(Kind::Type,
                 "start nonterminal '" + start + "' has type " + std::string(to_string(b.nonterminals.front().type)) +
                     " but '" + problem_.function_name + "' returns " + std::string(to_string(problem_.return_type)),
                 rules[0]);
        }
        try {
            problem_.grammar = std::make_shared<const Rtg>(b.nonterminals, b.params, start, b.decls);
        } catch (const GrammarError& e) {
            fail(Kind::Type, e.what(), form);
        }
        problem_.params = b.params;
    }

    void declare_var(const SExpr& form) {
        if (form.size() != 3) fail(Kind::Syntax, "declare-var takes a name and a sort", form);
        const auto& name = expect_symbol(form[1], "variable name");
        for (const auto& v : problem_.input_vars) {
            if (v.name == name) fail(Kind::Type, "variable '" + name + "' declared twice", form);
        }
        problem_.input_vars.push_back({name, parse_sort(form[2])});
    }

    ExprPtr typed(const SExpr& at, ExprPtr e, ScalarType want, const SExpr& whole, std::size_t position,
                  std::string_view op) {
        if (e->type != want) {
            fail(Kind::Type,
                 "argument " + std::to_string(position) + " of '" + std::string(op) + "' in '" + whole.to_string() +
                     "' must be " + std::string(to_string(want)),
                 at);
        }
        return e;
    }

    ExprPtr expr(const SExpr& e) {
        if (auto lit = literal_of(e)) return expr::int_const(*lit);
        if (e.is_atom("true")) return expr::bool_const(true);
        if (e.is_atom("false")) return expr::bool_const(false);
        if (e.is_atom()) {
            for (std::size_t i = 0; i < problem_.input_vars.size(); ++i) {
                if (problem_.input_vars[i].name == e.text()) {
                    return expr::var(i, problem_.input_vars[i].type);
                }
            }
            fail(Kind::Type, "undeclared variable '" + e.text() + "'", e);
        }
        const auto head = e.head();
        if (!head) fail(Kind::Syntax, "malformed term '" + e.to_string() + "'", e);
        const std::size_t n = e.size() - 1;
        auto args_of = [&](ScalarType want) {
            std::vector<ExprPtr> out;
            for (std::size_t i = 1; i < e.size(); ++i) {
                out.push_back(typed(e[i], expr(e[i]), want, e, i, *head));
            }
            return out;
        };
        auto fold = [](ExprKind kind, std::vector<ExprPtr> args) {
            ExprPtr acc = args.front();
            for (std::size_t i = 1; i < args.size(); ++i) {
                acc = expr::make(kind, {acc, args[i]});
            }
            return acc;
        };
        if (*head == problem_.function_name) {
            if (n != problem_.params.size()) {
                fail(Kind::Type,
                     "'" + problem_.function_name + "' takes " + std::to_string(problem_.params.size()) +
                         " arguments in '" + e.to_string() + "'",
                     e);
            }
            std::vector<ExprPtr> args;
            for (std::size_t i = 1; i < e.size(); ++i) {
                args.push_back(typed(e[i], expr(e[i]), problem_.params[i - 1].type, e, i, *head));
            }
            return expr::apply(std::move(args), problem_.return_type);
        }
        if (*head == "+") {
            if (n < 2) fail(Kind::Type, "'+' takes at least 2 arguments", e);
            return fold(ExprKind::Add, args_of(ScalarType::Int));
        }
        if (*head == "-") {
            if (n == 1) return expr::make(ExprKind::Neg, args_of(ScalarType::Int));
            if (n < 1) fail(Kind::Type, "'-' takes at least 1 argument", e);
            return fold(ExprKind::Sub, args_of(ScalarType::Int));
        }
        static const std::map<std::string, ExprKind, std::less<>> compare = {
            {"<", ExprKind::Lt}, {"<=", ExprKind::Le}, {">", ExprKind::Gt}, {">=", ExprKind::Ge}};
        if (auto it = compare.find(*head); it != compare.end()) {
            if (n != 2) fail(Kind::Type, "'" + std::string(*head) + "' takes 2 arguments", e);
            return expr::make(it->second, args_of(ScalarType::Int));
        }
        if (*head == "=") {
            if (n != 2) fail(Kind::Type, "'=' takes 2 arguments", e);
            auto lhs = expr(e[1]);
            auto rhs = typed(e[2], expr(e[2]), lhs->type, e, 2, *head);
            return expr::make(ExprKind::Eq, {lhs, rhs});
        }
        if (*head == "not") {
            if (n != 1) fail(Kind::Type, "'not' takes 1 argument", e);
            return expr::make(ExprKind::Not, args_of(ScalarType::Bool));
        }
        if (*head == "and" || *head == "or") {
            if (n < 1) fail(Kind::Type, "'" + std::string(*head) + "' takes at least 1 argument", e);
            auto args = args_of(ScalarType::Bool);
            if (args.size() == 1) return args.front();
            return expr::make(*head == "and" ? ExprKind::And : ExprKind::Or, std::move(args));
        }
        if (*head == "=>") {
            if (n != 2) fail(Kind::Type, "'=>' takes 2 arguments", e);
            return expr::make(ExprKind::Implies, args_of(ScalarType::Bool));
        }
        fail(Kind::Unsupported, "unsupported operator '" + std::string(*head) + "' in '" + e.to_string() + "'", e);
    }

    Problem problem_;
};

std::string sort_name(ScalarType t) { return std::string(to_string(t)); }

std::string rule_text(const Rtg& g, const Production& p) {
    const auto& s = *p.symbol;
    if (s.kind == SymbolKind::IntLiteral) {
        return s.literal.str();
    }
    return production_rhs_string(g, p);
}

} // namespace

Problem parse_problem(std::string_view source, std::string name) { return ProblemParser(std::move(name)).run(source); }

Problem parse_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str(), std::filesystem::path(path).stem().string());
}

std::string print_problem(const Problem& problem) {
    const Rtg& g = problem.g();
    std::string out = "(set-logic " + problem.logic + ")\n";
    out += "(synth-fun " + problem.function_name + " (";
    for (std::size_t i = 0; i < problem.params.size(); ++i) {
        out += (i ? " (" : "(") + problem.params[i].name + " " + sort_name(problem.params[i].type) + ")";
    }
    out += ") " + sort_name(problem.return_type) + "\n  (";
    for (std::size_t n = 0; n < g.nonterminals().size(); ++n) {
        const auto& nt = g.nonterminal(n);
        out += (n ? "\n   (" : "(") + nt.name + " " + sort_name(nt.type) + " (";
        for (const auto& p : g.productions(n)) {
            out += (p.index != 1 ? " " : "") + rule_text(g, p);
        }
        out += "))";
    }
    out += "))\n";
    for (const auto& v : problem.input_vars) {
        out += "(declare-var " + v.name + " " + sort_name(v.type) + ")\n";
    }
    out += "(constraint " + to_sexpr(*problem.constraint, problem.input_vars, problem.function_name) + ")\n";
    out += "(check-synth)\n";
    return out;
}

bool structurally_equal(const Problem& a, const Problem& b) {
    auto same_vars = [](const auto& x, const auto& y) {
        return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                          [](const auto& p, const auto& q) { return p.name == q.name && p.type == q.type; });
    };
    return a.logic == b.logic && a.function_name == b.function_name && a.return_type == b.return_type &&
           same_vars(a.params, b.params) && same_vars(a.input_vars, b.input_vars) &&
           same_vars(a.g().nonterminals(), b.g().nonterminals()) && a.g().start() == b.g().start() &&
           a.g().to_string() == b.g().to_string() && equal(*a.constraint, *b.constraint);
}

} // namespace unreal
