// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "unreal/cegis.hpp"

namespace unreal::cli {

inline constexpr std::string_view tool_name = "unreal";
inline constexpr std::string_view tool_version = "0.1.0";

enum ExitCode : int { ExitUnrealizable = 0, ExitRealizable = 1, ExitUnknown = 2, ExitError = 3 };

struct ProveOptions {
    std::string backend = "builtin";
    std::size_t max_rounds = 32;
    std::size_t budget_vectors = 200000;
    std::size_t term_size = 12;
    Integer box_lo{-32};
    Integer box_hi{32};
    std::optional<std::int64_t> timeout_ms;
    std::string seed_examples = "zeros";
    bool pretty = false;
    std::string cert_out;
    std::optional<std::uint64_t> seed;
    std::string verifier = "box";
    std::string smt_command = "z3 -in";
    std::string out_dir = ".";
};

struct RunReport {
    std::string problem;
    std::string input_file;
    std::string input_sha256;
    std::string verdict;
    std::string reason;
    std::vector<ValueVector> examples;
    std::size_t rounds = 0;
    std::optional<std::string> witness;
    std::optional<std::string> witness_bits;
    std::optional<std::string> certificate_path;
    std::optional<std::string> certificate_text;
    double parse_ms = 0;
    double solve_ms = 0;
    double decide_ms = 0;
    double verify_ms = 0;
    double emit_ms = 0;
    double total_ms = 0;
    std::vector<RoundRecord> trace;
    std::vector<std::string> emitted;
    nlohmann::json config;
};

/// Verdict label: unrealizable, realizable, realizable-bounded or unknown.
std::string verdict_label(const CegisVerdict& v);

/// Exit code as a function of the verdict label.
int exit_code_for(std::string_view verdict);

/// `(0,1),(1,0)` style tuples; values are decimal integers or true/false.
std::vector<ValueVector> parse_tuples(std::string_view text);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

nlohmann::json to_json(const RunReport& report, bool deterministic);
std::string to_pretty(const RunReport& report);

struct ProveOutcome {
    int exit_code = ExitError;
    RunReport report;
};

/// Parses, runs the loop and fills the report. Frontend errors propagate.
ProveOutcome prove_file(const std::string& path, const ProveOptions& options);

/// Entry point: `prove`, `emit` and `bench` subcommands.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace unreal::cli
