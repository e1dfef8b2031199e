// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "unreal/encoder.hpp"

namespace unreal {

namespace {

std::string c_identifier(std::string_view raw) {
    std::string out;
    for (char c : raw) {
        out += std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' ? c : '_';
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())) != 0) {
        out = "v_" + out;
    }
    return out;
}

const std::set<std::string, std::less<>>& reserved() {
    static const std::set<std::string, std::less<>> names = {
        "main", "spec", "nd", "assert", "int", "bool", "if", "else", "return", "void", "true", "false",
        "__VERIFIER_error", "char", "long", "short", "for", "while", "do", "switch", "case", "static", "extern"};
    return names;
}

std::string c_type(ScalarType t) { return t == ScalarType::Int ? "int" : "bool"; }

std::string c_literal(const Value& v) {
    if (v.is_bool()) {
        return v.as_bool() ? "true" : "false";
    }
    return v.as_int() < 0 ? "(" + v.as_int().str() + ")" : v.as_int().str();
}

std::string c_expr(const Expr& e, const std::function<std::string(std::size_t)>& var) {
    auto bin = [&](const char* op) { return "(" + c_expr(*e.args[0], var) + " " + op + " " + c_expr(*e.args[1], var) + ")"; };
    auto nary = [&](const char* op) {
        std::string out = "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            out += (i ? std::string(" ") + op + " " : std::string()) + c_expr(*e.args[i], var);
        }
        return out + ")";
    };
    switch (e.kind) {
    case ExprKind::IntConst: return c_literal(Value(e.int_value));
    case ExprKind::BoolConst: return e.bool_value ? "true" : "false";
    case ExprKind::Var: return var(e.var);
    case ExprKind::Add: return bin("+");
    case ExprKind::Sub: return bin("-");
    case ExprKind::Neg: return "(-" + c_expr(*e.args[0], var) + ")";
    case ExprKind::Eq: return bin("==");
    case ExprKind::Lt: return bin("<");
    case ExprKind::Le: return bin("<=");
    case ExprKind::Gt: return bin(">");
    case ExprKind::Ge: return bin(">=");
    case ExprKind::Not: return "!" + c_expr(*e.args[0], var);
    case ExprKind::And: return nary("&&");
    case ExprKind::Or: return nary("||");
    case ExprKind::Implies: return "(!" + c_expr(*e.args[0], var) + " || " + c_expr(*e.args[1], var) + ")";
    case ExprKind::Apply: break;
    }
    throw std::logic_error("application left in a flattened spec");
}

class CEmitter {
  public:
    CEmitter(const ReachabilityProblem& rp, const EmitOptions& options) : p_(rp.program), opt_(options) {
        const Rtg& g = *p_.grammar;
        std::set<std::string> used;
        for (const auto& f : p_.functions) {
            std::string name = c_identifier(f.name);
            if (reserved().count(name) != 0 || name.rfind("I_", 0) == 0 || name.rfind("temp", 0) == 0) {
                name = "nt_" + name;
            }
            while (used.count(name) != 0) {
                name += "_";
            }
            used.insert(name);
            fn_names_.push_back(name);
        }
        const auto ex_vars = p_.spec.example_vars();
        for (auto v : ex_vars) {
            var_names_.push_back(c_identifier(p_.spec.vars[v].name));
        }
        multi_nt_ = g.nonterminals().size() > 1;
        output_name_ = c_identifier(p_.spec.function_name);
        for (const auto& v : var_names_) {
            if (v == output_name_) {
                output_name_ = "out_" + output_name_;
            }
        }
        if (reserved().count(output_name_) != 0) {
            output_name_ = "out_" + output_name_;
        }
    }

    std::string run() {
        std::string out;
        out += "#include <assert.h>\n#include <stdbool.h>\n\n";
        out += "extern bool nd(void);\n";
        if (opt_.verifier_error) {
            out += "extern void __VERIFIER_error(void);\n";
        }
        out += "\n";
        const Rtg& g = *p_.grammar;
        for (std::size_t a = 0; a < g.nonterminals().size(); ++a) {
            out += c_type(g.nonterminal(a).type) + " ";
            for (std::size_t c = 0; c < p_.columns(); ++c) {
                out += (c ? ", " : "") + global(a, c);
            }
            out += ";\n";
        }
        for (std::size_t a = 0; a < g.nonterminals().size(); ++a) {
            out += "void " + fn_names_[a] + "(" + param_list() + ");\n";
        }
        for (const auto& f : p_.functions) {
            out += "\n" + function(f);
        }
        out += "\n" + spec_function();
        out += "\n" + main_function();
        return out;
    }

  private:
    std::string global(std::size_t nt, std::size_t col) const {
        const std::size_t m = col / p_.s;
        const std::size_t j = col % p_.s;
        std::string name = "I";
        if (multi_nt_) {
            name += "_" + c_identifier(p_.grammar->nonterminal(nt).name);
        }
        name += "_" + std::to_string(m);
        if (p_.s > 1) {
            name += "_" + std::to_string(j);
        }
        return name;
    }

    std::string example_var(std::size_t var_pos, std::size_t m) const {
        return var_names_[var_pos] + "_" + std::to_string(m);
    }

    std::string param_list() const {
        std::string out;
        const auto ex_vars = p_.spec.example_vars();
        for (std::size_t m = 0; m < p_.k; ++m) {
            for (std::size_t v = 0; v < ex_vars.size(); ++v) {
                out += (out.empty() ? "" : ", ") + c_type(p_.spec.vars[ex_vars[v]].type) + " " + example_var(v, m);
            }
        }
        return out.empty() ? "void" : out;
    }

    std::string arg_list() const {
        std::string out;
        for (std::size_t m = 0; m < p_.k; ++m) {
            for (std::size_t v = 0; v < var_names_.size(); ++v) {
                out += (out.empty() ? "" : ", ") + example_var(v, m);
            }
        }
        return out;
    }

    // Name of the example variable holding argument `param` of call slot `j`.
    std::string argument(std::size_t param, std::size_t m, std::size_t j) const {
        const auto ex_vars = p_.spec.example_vars();
        const std::size_t var = p_.spec.calls[j].args[param];
        const auto pos = static_cast<std::size_t>(std::find(ex_vars.begin(), ex_vars.end(), var) - ex_vars.begin());
        return example_var(pos, m);
    }

    static std::string temp_prefix(std::size_t arity, std::size_t child) {
        if (arity == 1) return "tempA";
        if (arity == 2) return child == 0 ? "tempL" : "tempR";
        if (arity == 3) return child == 0 ? "tempC" : child == 1 ? "tempL" : "tempR";
        return "temp" + std::to_string(child);
    }

    std::string temp(std::size_t arity, std::size_t child, std::size_t col) const {
        std::string name = temp_prefix(arity, child) + "_" + std::to_string(col / p_.s);
        if (p_.s > 1) {
            name += "_" + std::to_string(col % p_.s);
        }
        return name;
    }

    std::string enc(const Production& prod, std::size_t col) const {
        const auto& sym = *prod.symbol;
        const std::size_t n = sym.arity();
        auto t = [&](std::size_t i) { return temp(n, i, col); };
        switch (sym.kind) {
        case SymbolKind::IntLiteral: return c_literal(Value(sym.literal));
        case SymbolKind::BoolLiteral: return sym.bool_literal ? "true" : "false";
        case SymbolKind::Variable: return argument(sym.parameter, col / p_.s, col % p_.s);
        case SymbolKind::Plus: return t(0) + " + " + t(1);
        case SymbolKind::Minus: return t(0) + " - " + t(1);
        case SymbolKind::IfThenElse: return t(0) + " ? " + t(1) + " : " + t(2);
        case SymbolKind::Equals: return "(" + t(0) + " == " + t(1) + ")";
        case SymbolKind::GreaterThan: return "(" + t(0) + " > " + t(1) + ")";
        case SymbolKind::GreaterEqual: return "(" + t(0) + " >= " + t(1) + ")";
        case SymbolKind::LessThan: return "(" + t(0) + " < " + t(1) + ")";
        case SymbolKind::LessEqual: return "(" + t(0) + " <= " + t(1) + ")";
        case SymbolKind::Not: return "!" + t(0);
        case SymbolKind::And: return t(0) + " && " + t(1);
        case SymbolKind::Or: return t(0) + " || " + t(1);
        }
        return "";
    }

    std::string body(const Production& prod, const std::string& indent) const {
        const Rtg& g = *p_.grammar;
        std::string out;
        const std::size_t n = prod.rhs.size();
        for (std::size_t i = 0; i < n; ++i) {
            out += indent + fn_names_[prod.rhs[i]] + "(" + arg_list() + ");\n";
            out += indent;
            for (std::size_t c = 0; c < p_.columns(); ++c) {
                out += (c ? " " : "") + c_type(g.nonterminal(prod.rhs[i]).type) + " " + temp(n, i, c) + " = " +
                       global(prod.rhs[i], c) + ";";
            }
            out += "\n";
        }
        for (std::size_t c = 0; c < p_.columns(); ++c) {
            out += indent + global(prod.lhs, c) + " = " + enc(prod, c) + ";\n";
        }
        return out;
    }

    std::string function(const FunctionDef& f) const {
        const Rtg& g = *p_.grammar;
        std::string out = "void " + fn_names_[f.nonterminal] + "(" + param_list() + "){\n";
        const std::size_t count = f.branches.size();
        for (std::size_t b = 0; b < count; ++b) {
            const Production& prod = g.production(f.branches[b]);
            const std::string comment =
                "// Encodes \"" + g.nonterminal(f.nonterminal).name + " ::= " + production_rhs_string(g, prod) + "\"";
            if (count == 1) {
                out += "\t" + comment + "\n" + body(prod, "\t");
                continue;
            }
            if (b == 0) {
                out += "\tif(nd()){  " + comment + "\n";
            } else if (b + 1 < count) {
                out += "\telse if(nd()){  " + comment + "\n";
            } else {
                out += "\telse {  " + comment + "\n";
            }
            out += body(prod, "\t\t") + "\t}\n";
        }
        return out + "}\n";
    }

    std::string spec_output(std::size_t j) const {
        return p_.s == 1 ? output_name_ : output_name_ + "_" + std::to_string(j);
    }

    std::string spec_function() const {
        const FlatSpec& spec = p_.spec;
        const auto ex_vars = spec.example_vars();
        std::string params;
        for (std::size_t v = 0; v < ex_vars.size(); ++v) {
            params += (params.empty() ? "" : ", ") + c_type(spec.vars[ex_vars[v]].type) + " " + var_names_[v];
        }
        for (std::size_t j = 0; j < p_.s; ++j) {
            params += (params.empty() ? "" : ", ") + c_type(spec.vars[spec.calls[j].result].type) + " " + spec_output(j);
        }
        auto name_of = [&](std::size_t var) -> std::string {
            if (spec.single_call_form) {
                for (std::size_t j = 0; j < spec.calls.size(); ++j) {
                    if (spec.calls[j].result == var) {
                        return spec_output(j);
                    }
                }
            }
            const auto pos = static_cast<std::size_t>(std::find(ex_vars.begin(), ex_vars.end(), var) - ex_vars.begin());
            return var_names_.at(pos);
        };
        std::string ret = c_expr(*spec.body, name_of);
        if (!spec.single_call_form) {
            std::string hyps;
            for (const auto& h : spec.hypotheses) {
                std::string atom;
                if (h.kind == Hypothesis::Kind::Call) {
                    atom = "(" + spec_output(h.index) + " == " + name_of(spec.calls[h.index].result) + ")";
                } else {
                    const auto& d = spec.definitions[h.index];
                    atom = "(" + name_of(d.var) + " == " + c_expr(*d.expr, name_of) + ")";
                }
                hyps += (hyps.empty() ? "" : " && ") + atom;
            }
            ret = "!(" + hyps + ") || " + ret;
        }
        return "bool spec(" + params + "){\n\treturn (" + ret + ");\n}\n";
    }

    std::string main_function() const {
        std::string out = "int main(void){\n";
        for (std::size_t m = 0; m < p_.k; ++m) {
            out += "\t";
            for (std::size_t v = 0; v < var_names_.size(); ++v) {
                const auto& val = p_.examples[m][v];
                out += (v ? " " : "") + c_type(val.type()) + " " + example_var(v, m) + " = " + c_literal(val) + ";";
            }
            out += "  // Input example " + to_string(p_.examples[m]) + "\n";
        }
        out += "\t" + fn_names_[p_.grammar->start()] + "(" + arg_list() + ");\n";
        std::string cond;
        for (std::size_t m = 0; m < p_.k; ++m) {
            std::string call = "!spec(";
            for (std::size_t v = 0; v < var_names_.size(); ++v) {
                call += (v ? "," : "") + example_var(v, m);
            }
            for (std::size_t j = 0; j < p_.s; ++j) {
                call += (var_names_.empty() && j == 0 ? "" : ",") + global(p_.grammar->start(), p_.column(m, j));
            }
            call += ")";
            cond += (m ? " || " : "") + call;
        }
        if (opt_.verifier_error) {
            out += "\tif(!(" + cond + ")) __VERIFIER_error();  // At least one example fails\n";
        } else {
            out += "\tassert(" + cond + ");  // At least one example fails\n";
        }
        return out + "\treturn 0;\n}\n";
    }

    const ProgramIr& p_;
    EmitOptions opt_;
    std::vector<std::string> fn_names_;
    std::vector<std::string> var_names_;
    std::string output_name_;
    bool multi_nt_ = false;
};

} // namespace

std::string emit_c(const ReachabilityProblem& rp, const EmitOptions& options) { return CEmitter(rp, options).run(); }

} // namespace unreal
