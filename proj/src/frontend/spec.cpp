// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include "unreal/spec.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace unreal {

namespace expr {

ExprPtr int_const(Integer v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::IntConst;
    e->type = ScalarType::Int;
    e->int_value = std::move(v);
    return e;
}

ExprPtr bool_const(bool v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::BoolConst;
    e->type = ScalarType::Bool;
    e->bool_value = v;
    return e;
}

ExprPtr var(std::size_t index, ScalarType type) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    e->type = type;
    e->var = index;
    return e;
}

ExprPtr apply(std::vector<ExprPtr> args, ScalarType result) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Apply;
    e->type = result;
    e->args = std::move(args);
    return e;
}

ExprPtr make(ExprKind kind, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    switch (kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Neg:
    case ExprKind::IntConst: e->type = ScalarType::Int; break;
    default: e->type = ScalarType::Bool; break;
    }
    e->args = std::move(args);
    return e;
}

} // namespace expr

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.type != b.type || a.args.size() != b.args.size()) {
        return false;
    }
    switch (a.kind) {
    case ExprKind::IntConst:
        if (a.int_value != b.int_value) return false;
        break;
    case ExprKind::BoolConst:
        if (a.bool_value != b.bool_value) return false;
        break;
    case ExprKind::Var:
        if (a.var != b.var) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!equal(*a.args[i], *b.args[i])) {
            return false;
        }
    }
    return true;
}

namespace {

std::string_view op_spelling(ExprKind kind) {
    switch (kind) {
    case ExprKind::Add: return "+";
    case ExprKind::Sub:
    case ExprKind::Neg: return "-";
    case ExprKind::Eq: return "=";
    case ExprKind::Lt: return "<";
    case ExprKind::Le: return "<=";
    case ExprKind::Gt: return ">";
    case ExprKind::Ge: return ">=";
    case ExprKind::Not: return "not";
    case ExprKind::And: return "and";
    case ExprKind::Or: return "or";
    case ExprKind::Implies: return "=>";
    default: return "";
    }
}

} // namespace

std::string to_sexpr(const Expr& e, std::span<const SpecVar> vars, const std::string& f) {
    switch (e.kind) {
    case ExprKind::IntConst: return Value(e.int_value).to_smtlib();
    case ExprKind::BoolConst: return e.bool_value ? "true" : "false";
    case ExprKind::Var: return e.var < vars.size() ? vars[e.var].name : "?v" + std::to_string(e.var);
    default: break;
    }
    std::string out = "(";
    out += e.kind == ExprKind::Apply ? std::string_view(f) : op_spelling(e.kind);
    for (const auto& a : e.args) {
        out += " " + to_sexpr(*a, vars, f);
    }
    return out + ")";
}

bool has_apply(const Expr& e) {
    if (e.kind == ExprKind::Apply) {
        return true;
    }
    return std::any_of(e.args.begin(), e.args.end(), [](const ExprPtr& a) { return has_apply(*a); });
}

Value eval_expr(const Expr& e, std::span<const Value> vars) {
    return eval_expr(e, vars, [](const ValueVector&) -> Value {
        throw std::logic_error("application of the synthesized function in a closed expression");
    });
}

std::vector<std::size_t> FlatSpec::example_vars() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        if (is_example_var(v)) {
            out.push_back(v);
        }
    }
    return out;
}

bool FlatSpec::is_example_var(std::size_t var) const {
    if (!single_call_form) {
        return var < vars.size();
    }
    return var < input_count;
}

namespace {

ExprPtr substitute_results(const ExprPtr& e, const FlatSpec& spec) {
    if (e->kind == ExprKind::Var) {
        for (const auto& call : spec.calls) {
            if (call.result == e->var) {
                std::vector<ExprPtr> args;
                for (auto a : call.args) {
                    args.push_back(expr::var(a, spec.vars[a].type));
                }
                return expr::apply(std::move(args), e->type);
            }
        }
        return e;
    }
    if (e->args.empty()) {
        return e;
    }
    auto copy = std::make_shared<Expr>(*e);
    for (auto& a : copy->args) {
        a = substitute_results(a, spec);
    }
    return copy;
}

// Full variable table for one example.
ValueVector bind_example(const FlatSpec& spec, std::span<const Value> example) {
    const auto ex_vars = spec.example_vars();
    if (example.size() != ex_vars.size()) {
        throw std::invalid_argument("example has " + std::to_string(example.size()) + " components, expected " +
                                    std::to_string(ex_vars.size()));
    }
    ValueVector table(spec.vars.size());
    for (std::size_t i = 0; i < ex_vars.size(); ++i) {
        table[ex_vars[i]] = example[i];
    }
    return table;
}

} // namespace

ExprPtr FlatSpec::formula() const {
    if (single_call_form) {
        return substitute_results(body, *this);
    }
    std::vector<ExprPtr> hyps;
    for (const auto& h : hypotheses) {
        if (h.kind == Hypothesis::Kind::Call) {
            const auto& call = calls[h.index];
            std::vector<ExprPtr> args;
            for (auto a : call.args) {
                args.push_back(expr::var(a, vars[a].type));
            }
            const auto rtype = vars[call.result].type;
            hyps.push_back(expr::make(ExprKind::Eq, {expr::apply(std::move(args), rtype), expr::var(call.result, rtype)}));
        } else {
            const auto& def = definitions[h.index];
            hyps.push_back(expr::make(ExprKind::Eq, {def.expr, expr::var(def.var, vars[def.var].type)}));
        }
    }
    ExprPtr premise = hyps.size() == 1 ? hyps.front() : expr::make(ExprKind::And, std::move(hyps));
    return expr::make(ExprKind::Implies, {premise, body});
}

ValueVector FlatSpec::call_arguments(std::span<const Value> example, std::size_t slot) const {
    const auto table = bind_example(*this, example);
    ValueVector out;
    for (auto a : calls.at(slot).args) {
        out.push_back(table[a]);
    }
    return out;
}

bool eval_spec(const FlatSpec& spec, std::span<const Value> example, std::span<const Value> outputs) {
    if (outputs.size() != spec.calls.size()) {
        throw std::invalid_argument("expected one output per call slot");
    }
    auto table = bind_example(spec, example);
    if (spec.single_call_form) {
        for (std::size_t j = 0; j < spec.calls.size(); ++j) {
            table[spec.calls[j].result] = outputs[j];
        }
        return eval_expr(*spec.body, table).as_bool();
    }
    for (const auto& h : spec.hypotheses) {
        if (h.kind == Hypothesis::Kind::Call) {
            if (!(outputs[h.index] == table[spec.calls[h.index].result])) {
                return true;
            }
        } else {
            const auto& def = spec.definitions[h.index];
            if (!(eval_expr(*def.expr, table) == table[def.var])) {
                return true;
            }
        }
    }
    return eval_expr(*spec.body, table).as_bool();
}

namespace {

bool single_call_shape(const Expr& e) {
    if (e.kind == ExprKind::Apply) {
        return std::all_of(e.args.begin(), e.args.end(), [](const ExprPtr& a) { return a->kind == ExprKind::Var; });
    }
    return std::all_of(e.args.begin(), e.args.end(), [](const ExprPtr& a) { return single_call_shape(*a); });
}

class Flattener {
  public:
    Flattener(FlatSpec& out, const std::vector<SpecVar>& inputs) : out_(out) {
        for (const auto& v : inputs) {
            used_.push_back(v.name);
        }
    }

    ExprPtr visit(const ExprPtr& e) {
        if (e->kind == ExprKind::Apply) {
            std::vector<std::size_t> args;
            for (const auto& raw : e->args) {
                const ExprPtr a = visit(raw);
                if (a->kind == ExprKind::Var) {
                    args.push_back(a->var);
                    continue;
                }
                const std::string key = to_sexpr(*a, out_.vars, out_.function_name);
                auto it = defined_.find(key);
                if (it == defined_.end()) {
                    const std::size_t v = fresh(a->type);
                    out_.definitions.push_back({v, a});
                    out_.hypotheses.push_back({Hypothesis::Kind::Definition, out_.definitions.size() - 1});
                    it = defined_.emplace(key, v).first;
                }
                args.push_back(it->second);
            }
            auto it = called_.find(args);
            if (it == called_.end()) {
                const std::size_t result = fresh(e->type);
                out_.calls.push_back({args, result});
                out_.hypotheses.push_back({Hypothesis::Kind::Call, out_.calls.size() - 1});
                it = called_.emplace(args, out_.calls.size() - 1).first;
            }
            const auto& call = out_.calls[it->second];
            return expr::var(call.result, out_.vars[call.result].type);
        }
        if (e->args.empty()) {
            return e;
        }
        auto copy = std::make_shared<Expr>(*e);
        for (auto& a : copy->args) {
            a = visit(a);
        }
        return copy;
    }

  private:
    std::size_t fresh(ScalarType type) {
        std::string name;
        do {
            name = "y" + std::to_string(++counter_);
        } while (std::find(used_.begin(), used_.end(), name) != used_.end());
        used_.push_back(name);
        out_.vars.push_back({name, type});
        return out_.vars.size() - 1;
    }

    FlatSpec& out_;
    std::vector<std::string> used_;
    std::size_t counter_ = 0;
    std::map<std::string, std::size_t> defined_;
    std::map<std::vector<std::size_t>, std::size_t> called_;
};

} // namespace

FlatSpec flatten_spec(const ExprPtr& spec, const std::vector<SpecVar>& input_vars, const std::string& function_name) {
    FlatSpec out;
    out.vars = input_vars;
    out.input_count = input_vars.size();
    out.function_name = function_name;
    out.single_call_form = single_call_shape(*spec);
    Flattener flattener(out, input_vars);
    out.body = flattener.visit(spec);
    if (out.single_call_form) {
        out.hypotheses.clear();
    }
    return out;
}

} // namespace unreal
