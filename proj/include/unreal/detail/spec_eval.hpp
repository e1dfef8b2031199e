// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace unreal {

template <class ApplyFn>
Value eval_expr(const Expr& e, std::span<const Value> vars, ApplyFn&& apply) {
    auto sub = [&](std::size_t i) { return eval_expr(*e.args[i], vars, apply); };
    switch (e.kind) {
    case ExprKind::IntConst: return Value(e.int_value);
    case ExprKind::BoolConst: return Value(e.bool_value);
    case ExprKind::Var:
        if (e.var >= vars.size()) {
            throw std::logic_error("unbound specification variable");
        }
        return vars[e.var];
    case ExprKind::Apply: {
        ValueVector args;
        args.reserve(e.args.size());
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            args.push_back(sub(i));
        }
        return apply(args);
    }
    case ExprKind::Add: {
        Integer acc = 0;
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            acc += sub(i).as_int();
        }
        return Value(std::move(acc));
    }
    case ExprKind::Sub: {
        Integer acc = sub(0).as_int();
        for (std::size_t i = 1; i < e.args.size(); ++i) {
            acc -= sub(i).as_int();
        }
        return Value(std::move(acc));
    }
    case ExprKind::Neg: return Value(Integer(-sub(0).as_int()));
    case ExprKind::Eq: return Value(sub(0) == sub(1));
    case ExprKind::Lt: return Value(sub(0).as_int() < sub(1).as_int());
    case ExprKind::Le: return Value(sub(0).as_int() <= sub(1).as_int());
    case ExprKind::Gt: return Value(sub(0).as_int() > sub(1).as_int());
    case ExprKind::Ge: return Value(sub(0).as_int() >= sub(1).as_int());
    case ExprKind::Not: return Value(!sub(0).as_bool());
    case ExprKind::And:
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (!sub(i).as_bool()) {
                return Value(false);
            }
        }
        return Value(true);
    case ExprKind::Or:
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (sub(i).as_bool()) {
                return Value(true);
            }
        }
        return Value(false);
    case ExprKind::Implies: return Value(!sub(0).as_bool() || sub(1).as_bool());
    }
    throw std::logic_error("unknown expression kind");
}

} // namespace unreal
