// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unreal/value.hpp"

namespace unreal {

/// Node kinds of specification formulas. `Apply` is an application of the
/// synthesized function to argument terms; after flattening every
/// application is over variables, and the body refers to call results
/// through ordinary variables.
enum class ExprKind {
    IntConst,
    BoolConst,
    Var,
    Apply,
    Add,
    Sub,
    Neg,
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
    Not,
    And,
    Or,
    Implies,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind = ExprKind::IntConst;
    ScalarType type = ScalarType::Int;
    Integer int_value{0};
    bool bool_value = false;
    std::size_t var = 0; // Var: index into the owning variable table
    std::vector<ExprPtr> args;
};

namespace expr {
ExprPtr int_const(Integer v);
ExprPtr bool_const(bool v);
ExprPtr var(std::size_t index, ScalarType type);
ExprPtr apply(std::vector<ExprPtr> args, ScalarType result);
/// Generic constructor; result type is derived from the kind.
ExprPtr make(ExprKind kind, std::vector<ExprPtr> args);
} // namespace expr

struct SpecVar {
    std::string name;
    ScalarType type = ScalarType::Int;
};

/// Structural equality.
bool equal(const Expr& a, const Expr& b);

/// SMT-LIB style rendering; `f` names applications.
std::string to_sexpr(const Expr& e, std::span<const SpecVar> vars, const std::string& f);

/// Calls the synthesized function reaches. `args` and `result` index the
/// flat variable table.
struct CallSlot {
    std::vector<std::size_t> args;
    std::size_t result = 0;
};

struct Definition {
    std::size_t var = 0;
    ExprPtr expr;
};

/// One defining constraint of the flattened form, in creation order:
/// either `f(args_j) = result_j` or `var = expr`.
struct Hypothesis {
    enum class Kind { Call, Definition } kind = Kind::Call;
    std::size_t index = 0; // into calls or definitions
};

/// A specification where the synthesized function is only applied to
/// tuples of variables.
///
/// Two shapes occur. In single-call form every application in the source
/// already had plain variable arguments and none was nested; the result
/// variables are then bound directly to the call outputs and an example
/// is a tuple over the input variables alone. Otherwise every fresh
/// variable becomes part of the example tuple and the defining constraints
/// act as hypotheses of an implication.
struct FlatSpec {
    std::vector<SpecVar> vars;
    std::size_t input_count = 0;
    std::vector<CallSlot> calls;
    std::vector<Definition> definitions;
    std::vector<Hypothesis> hypotheses;
    ExprPtr body;
    bool single_call_form = true;
    std::string function_name = "f";

    /// Variables forming one example tuple, in order.
    [[nodiscard]] std::vector<std::size_t> example_vars() const;
    [[nodiscard]] std::size_t example_arity() const { return example_vars().size(); }
    [[nodiscard]] std::size_t slot_count() const { return calls.size(); }
    [[nodiscard]] bool is_example_var(std::size_t var) const;

    /// Whole specification as one formula with explicit applications:
    /// `(=> (and hyp...) body)`, or the body with call results substituted
    /// back in single-call form.
    [[nodiscard]] ExprPtr formula() const;

    /// Environment (function-argument values) of call `slot` on `example`.
    [[nodiscard]] ValueVector call_arguments(std::span<const Value> example, std::size_t slot) const;
};

/// Flattens nested and multi-argument applications. Traversal is
/// innermost-first, left to right; syntactically identical argument
/// tuples share one call slot. `input_vars` are the variables `e` uses.
FlatSpec flatten_spec(const ExprPtr& spec, const std::vector<SpecVar>& input_vars, const std::string& function_name);

/// Evaluates a flattened spec on one example. `example` is ordered as
/// `example_vars()`; `outputs` holds one value per call slot. Defining
/// constraints are hypotheses. Throws std::invalid_argument on arity
/// mismatch.
bool eval_spec(const FlatSpec& spec, std::span<const Value> example, std::span<const Value> outputs);

/// Evaluates an expression with application nodes answered by `apply`.
/// `vars` binds every variable the expression mentions.
template <class ApplyFn>
Value eval_expr(const Expr& e, std::span<const Value> vars, ApplyFn&& apply);

/// Evaluates an expression without applications.
Value eval_expr(const Expr& e, std::span<const Value> vars);

/// True when an application node occurs anywhere in `e`.
bool has_apply(const Expr& e);

} // namespace unreal

#include "unreal/detail/spec_eval.hpp"
