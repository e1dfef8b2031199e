// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "unreal/domains/affine.hpp"
#include "unreal/domains/numeric.hpp"
#include "unreal/encoder.hpp"

namespace unreal {

/// Over-approximation of the output vectors one nonterminal can produce.
/// Int nonterminals use the numeric components; Bool ones the vector set.
struct NtAbstraction {
    ScalarType type = ScalarType::Int;
    bool reached = false;
    AffineSet affine = AffineSet::bottom(0);
    IntLattice lattice = IntLattice::bottom(0);
    std::vector<Interval> intervals;
    std::vector<Congruence> congruences;
    BoolSet bools = BoolSet::empty(0);

    static NtAbstraction unreached(ScalarType type, std::size_t n);
    /// Abstraction of exactly one vector.
    static NtAbstraction of_vector(std::span<const Value> v);

    /// Membership in every component.
    [[nodiscard]] bool contains(std::span<const Value> v) const;
    /// Name of the first component (affine, congruence, interval, lattice,
    /// bool-set) that excludes `v`, or empty when all contain it.
    [[nodiscard]] std::string excluded_by(std::span<const Value> v) const;
    /// Component-wise containment of `other`.
    [[nodiscard]] bool includes(const NtAbstraction& other) const;
    [[nodiscard]] NtAbstraction join(const NtAbstraction& other) const;

    friend bool operator==(const NtAbstraction&, const NtAbstraction&) = default;
};

struct AbstractState {
    std::vector<NtAbstraction> nts;
    [[nodiscard]] bool includes(const AbstractState& other) const;
    friend bool operator==(const AbstractState&, const AbstractState&) = default;
};

struct AbstractOptions {
    std::size_t widening_delay = 3;
    std::size_t candidate_limit = 100000;
    /// ITE transfers join one mix per condition vector up to this many.
    std::size_t ite_mix_limit = 256;
    std::size_t max_iterations = 10000;
    bool record_history = false;
};

struct FixpointResult {
    AbstractState state;
    std::size_t iterations = 0;
    bool cancelled = false;
    bool converged = false;
    std::vector<AbstractState> history;
};

/// Least fixpoint of the production transfer functions with interval
/// widening after `widening_delay` growth steps per nonterminal.
FixpointResult compute_fixpoint(const ProgramIr& program, const AbstractOptions& options = {},
                                std::stop_token stop = {});

/// Output tuples allowed by the spec, per example (each tuple has s values).
/// `finite` is false when some example admits infinitely many or more than
/// `limit` tuples.
struct CandidateSets {
    std::vector<std::vector<ValueVector>> per_example;
    bool finite = false;
    std::string why_not;
};

/// Finite per-example candidate sets from the spec alone, narrowed by
/// `bounds` (per column intervals) when supplied.
CandidateSets spec_candidates(const ProgramIr& program, const std::vector<Interval>* bounds = nullptr,
                              std::size_t limit = 100000);

struct RejectedCandidate {
    ValueVector vector;
    std::string component;
    std::string detail;
};

/// Human-auditable unrealizability certificate: the final abstraction and
/// every candidate vector with the component that excludes it.
struct Certificate {
    std::string problem;
    std::vector<std::string> column_names;
    std::vector<ValueVector> examples;
    AbstractState state;
    std::vector<RejectedCandidate> rejected;
    /// Per-coordinate values eliminated before vectors were formed.
    std::vector<std::string> pruned;
    std::string reason;
};

std::string to_text(const Certificate& cert, const Rtg& grammar);

struct SatWitness {
    TermPtr term;
    ChoiceString bits;
    ValueVector outputs;
};

struct ReachVerdict {
    enum class Kind { SatWitness, ProvedUnsat, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<SatWitness> witness;
    std::optional<Certificate> certificate;
    std::string reason;
    std::string engine;
};

std::string_view to_string(ReachVerdict::Kind kind);

struct SearchBudget {
    std::size_t max_vectors = 200000;
    std::size_t max_term_size = 12;
};

/// Bottom-up enumeration with observational-equivalence pruning on the
/// example columns. Start nonterminals with an if-then-else production first
/// try a decision-list unification over conditional-free pools.
ReachVerdict bounded_search(const ReachabilityProblem& rp, const SearchBudget& budget = {},
                            std::stop_token stop = {});

/// Fixpoint plus finite-candidate emptiness check.
ReachVerdict abstract_prove(const ReachabilityProblem& rp, const AbstractOptions& options = {},
                            std::stop_token stop = {});

struct DecideBudgets {
    SearchBudget search;
    AbstractOptions abstract;
};

/// Runs both engines concurrently; the first definitive answer wins and
/// cancels the other.
ReachVerdict decide(const ReachabilityProblem& rp, const DecideBudgets& budgets = {}, std::stop_token stop = {});

/// Column labels `o[e<m>]` or `o[e<m>,<j>]`.
std::vector<std::string> column_names(const ProgramIr& program);

} // namespace unreal
