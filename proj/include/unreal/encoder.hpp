// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unreal/problem.hpp"
#include "unreal/terms.hpp"

namespace unreal {

/// One function of the nondeterministic program: a branch per production,
/// in production order.
struct FunctionDef {
    std::size_t nonterminal = 0;
    std::string name;
    std::vector<ProductionRef> branches;
};

/// The program P[G,E]. Every nonterminal owns k*s global value slots
/// (example-major, call slot minor); a call to its function overwrites
/// them with the outputs of one nondeterministically generated term.
struct ProgramIr {
    std::shared_ptr<const Rtg> grammar;
    FlatSpec spec;
    std::vector<ValueVector> examples; // tuples over spec.example_vars()
    std::vector<ValueVector> envs;     // per column: the function's argument values
    std::vector<FunctionDef> functions;
    std::size_t k = 0;
    std::size_t s = 0;

    [[nodiscard]] std::size_t columns() const { return k * s; }
    [[nodiscard]] std::size_t column(std::size_t example, std::size_t slot) const { return example * s + slot; }
    [[nodiscard]] std::size_t global(std::size_t nonterminal, std::size_t col) const {
        return nonterminal * columns() + col;
    }
    [[nodiscard]] std::size_t global_count() const { return grammar->nonterminals().size() * columns(); }

    /// Output vector of a term over all columns (its lock-step signature).
    [[nodiscard]] ValueVector evaluate(const Term& t) const;
    /// Outputs of example `m` taken from a column vector.
    [[nodiscard]] ValueVector example_outputs(std::span<const Value> columns, std::size_t m) const;
    /// True when every example satisfies the spec under `columns`.
    [[nodiscard]] bool satisfies_all(std::span<const Value> columns) const;
};

/// Program plus its final assertion "at least one example fails".
struct ReachabilityProblem {
    std::string name;
    ProgramIr program;
};

/// Throws std::invalid_argument for an empty example list or tuples that do
/// not match the example variables.
ReachabilityProblem build_program(const Problem& problem, const std::vector<ValueVector>& examples);

enum class Outcome { AssertionFalsified, AssertionHeld, Diverged };

std::string_view to_string(Outcome outcome);

struct Execution {
    Outcome outcome = Outcome::Diverged;
    ValueVector globals;
    ValueVector start_values;
    std::size_t consumed = 0;
    std::size_t calls = 0;
};

/// Runs the program with `nd()` answered by `bits`. More than `call_budget`
/// function calls yields Diverged.
Execution interpret(const ReachabilityProblem& rp, const ChoiceString& bits,
                    std::size_t call_budget = default_node_budget);

struct EmitOptions {
    /// Report failure through `__VERIFIER_error()` instead of `assert`.
    bool verifier_error = false;
};

/// C translation in the shape of the classic max2 listings.
std::string emit_c(const ReachabilityProblem& rp, const EmitOptions& options = {});

/// SMT-LIB2 HORN rendering: one predicate per nonterminal over k*s columns,
/// one rule per production and one query.
std::string emit_chc(const ReachabilityProblem& rp);
std::string emit_chc(const Problem& problem, const std::vector<ValueVector>& examples);

/// `<problem>.<k>ex.<ext>`.
std::string emission_filename(std::string_view problem, std::size_t k, std::string_view ext);

struct ChcSummary {
    bool ok = false;
    std::string error;
    std::size_t predicates = 0;
    std::size_t rules = 0;
    std::size_t queries = 0;
    std::vector<std::size_t> arities;
};

/// Well-formedness reparse: balanced s-expressions, HORN logic, declared
/// predicates applied at their arity with matching argument sorts.
ChcSummary check_chc(std::string_view text);

} // namespace unreal
