// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "unreal/reach.hpp"

namespace unreal {

/// Ordered, duplicate-free, append-only list of example tuples.
class ExampleSet {
  public:
    ExampleSet() = default;
    explicit ExampleSet(const std::vector<ValueVector>& tuples);

    /// Appends unless already present; returns whether it was new.
    bool add(ValueVector tuple);
    [[nodiscard]] bool contains(const ValueVector& tuple) const { return index_.count(tuple) > 0; }
    [[nodiscard]] std::size_t size() const { return items_.size(); }
    [[nodiscard]] bool empty() const { return items_.empty(); }
    [[nodiscard]] const std::vector<ValueVector>& items() const { return items_; }

  private:
    std::vector<ValueVector> items_;
    std::unordered_set<ValueVector, ValueVectorHash> index_;
};

/// Every input variable ranges over [lo, hi]; Bool variables over both values.
struct BoundedBox {
    Integer lo{-32};
    Integer hi{32};
};

/// Runs `command` through /bin/sh with the query on stdin.
struct ExternalSmt {
    std::string command;
};

struct VerifierConfig {
    std::variant<BoundedBox, ExternalSmt> mode = BoundedBox{};
    std::chrono::milliseconds timeout{10000};
    /// Use the OpenMP scan for the box.
    bool parallel = true;
};

struct VerifyResult {
    enum class Kind { Pass, Counterexample, Error };
    Kind kind = Kind::Error;
    /// Counterexample as an example tuple over the spec's example variables.
    ValueVector example;
    /// Counterexample restricted to the input variables.
    ValueVector inputs;
    /// Pass established only inside the box.
    bool bounded = false;
    std::string error;
};

/// Specification with the candidate inlined, `(assert (not ...))` form.
std::string verification_query(const Term& term, const Problem& problem);

/// Example tuple for the given input values: call slots and definitions
/// are computed from `term`.
ValueVector complete_example(const Problem& problem, const Term& term, std::span<const Value> inputs);

VerifyResult verify_candidate(const Term& term, const Problem& problem, const VerifierConfig& cfg = {});

enum class SeedStrategy { Empty, Zeros, Corners, User, Random };

struct SeedOptions {
    SeedStrategy strategy = SeedStrategy::Zeros;
    Integer lo{0};
    Integer hi{1};
    std::vector<ValueVector> user;
    std::uint64_t random_seed = 0;
    std::size_t random_count = 4;
};

/// Deterministic initial examples over the spec's example variables.
ExampleSet seed_examples_from_spec(const Problem& problem, const SeedOptions& options);

struct RoundRecord {
    std::size_t round = 0;
    std::size_t examples = 0;
    std::string verdict;
    std::string engine;
    std::string candidate;
    std::optional<ValueVector> counterexample;
    double decide_ms = 0;
    double verify_ms = 0;
};

struct CegisOptions {
    VerifierConfig verifier;
    std::size_t max_rounds = 32;
    DecideBudgets budgets;
    std::optional<std::chrono::milliseconds> time_budget;
    /// On an inconclusive round, add the least new box point and continue.
    bool augment_on_unknown = true;
};

struct CegisVerdict {
    enum class Kind { Unrealizable, Realizable, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Certificate> certificate;
    TermPtr term;
    /// Realizable with an unbounded verifier pass.
    bool verified = false;
    std::string reason;
    std::vector<ValueVector> examples;
    std::vector<RoundRecord> trace;
    std::size_t rounds = 0;
};

std::string_view to_string(CegisVerdict::Kind kind);

/// Counterexample-guided loop over growing example sets. With no seed
/// examples the first candidate is the smallest term of the grammar.
CegisVerdict cegis_loop(const Problem& problem, const CegisOptions& options, const ExampleSet& seeds,
                        std::stop_token stop = {});

} // namespace unreal
