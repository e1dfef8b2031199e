// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unreal/grammar.hpp"
#include "unreal/sexpr.hpp"
#include "unreal/spec.hpp"

namespace unreal {

struct Problem {
    std::string name;
    std::string logic = "LIA";
    std::string function_name = "f";
    std::vector<Parameter> params;
    ScalarType return_type = ScalarType::Int;
    std::shared_ptr<const Rtg> grammar;
    std::vector<SpecVar> input_vars;
    /// Conjunction of all constraints, over `input_vars`.
    ExprPtr constraint;
    FlatSpec spec;

    [[nodiscard]] const Rtg& g() const { return *grammar; }
};

class FrontendError : public std::runtime_error {
  public:
    enum class Kind { Syntax, Type, UnsupportedLogic, Unsupported };

    FrontendError(Kind kind, const std::string& what, std::optional<SourcePos> pos = std::nullopt);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] std::optional<SourcePos> pos() const { return pos_; }

  private:
    Kind kind_;
    std::optional<SourcePos> pos_;
};

std::string_view to_string(FrontendError::Kind kind);

/// Parses a SyGuS-lite problem. Productions keep file order. Operator
/// arguments that are not nonterminal names (literals, parameters, nested
/// operators) are lifted into fresh single-production nonterminals named
/// `<lhs>_aux<n>`.
Problem parse_problem(std::string_view source, std::string name = "problem");

/// Reads and parses a file; the problem is named after the file stem.
Problem parse_problem_file(const std::string& path);

/// SyGuS-lite text that parses back to a structurally equal problem.
std::string print_problem(const Problem& problem);

/// Same grammar (names, types, production order), variables and constraint.
bool structurally_equal(const Problem& a, const Problem& b);

} // namespace unreal
