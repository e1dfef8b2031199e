// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <stdexcept>

#include "unreal/encoder.hpp"

namespace unreal {

ValueVector ProgramIr::evaluate(const Term& t) const { return eval_vector(t, envs); }

ValueVector ProgramIr::example_outputs(std::span<const Value> cols, std::size_t m) const {
    return ValueVector(cols.begin() + static_cast<std::ptrdiff_t>(column(m, 0)),
                       cols.begin() + static_cast<std::ptrdiff_t>(column(m, 0) + s));
}

bool ProgramIr::satisfies_all(std::span<const Value> cols) const {
    for (std::size_t m = 0; m < k; ++m) {
        if (!eval_spec(spec, examples[m], example_outputs(cols, m))) {
            return false;
        }
    }
    return true;
}

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
    case Outcome::AssertionFalsified: return "assertion-falsified";
    case Outcome::AssertionHeld: return "assertion-held";
    case Outcome::Diverged: return "diverged";
    }
    return "?";
}

ReachabilityProblem build_program(const Problem& problem, const std::vector<ValueVector>& examples) {
    if (examples.empty()) {
        throw std::invalid_argument("the program needs at least one example");
    }
    ReachabilityProblem rp;
    rp.name = problem.name;
    ProgramIr& p = rp.program;
    p.grammar = problem.grammar;
    p.spec = problem.spec;
    p.examples = examples;
    p.k = examples.size();
    p.s = problem.spec.slot_count();
    const auto ex_vars = p.spec.example_vars();
    for (const auto& e : examples) {
        if (e.size() != ex_vars.size()) {
            throw std::invalid_argument("example " + to_string(e) + " has " + std::to_string(e.size()) +
                                        " components, expected " + std::to_string(ex_vars.size()));
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i].type() != p.spec.vars[ex_vars[i]].type) {
                throw std::invalid_argument("example " + to_string(e) + ": component " + std::to_string(i + 1) +
                                            " must be " + std::string(to_string(p.spec.vars[ex_vars[i]].type)));
            }
        }
        for (std::size_t j = 0; j < p.s; ++j) {
            p.envs.push_back(p.spec.call_arguments(e, j));
        }
    }
    const Rtg& g = *p.grammar;
    for (std::size_t a = 0; a < g.nonterminals().size(); ++a) {
        FunctionDef f;
        f.nonterminal = a;
        f.name = g.nonterminal(a).name;
        for (const auto& prod : g.productions(a)) {
            f.branches.push_back(prod.ref());
        }
        p.functions.push_back(std::move(f));
    }
    return rp;
}

Execution interpret(const ReachabilityProblem& rp, const ChoiceString& bits, std::size_t call_budget) {
    const ProgramIr& p = rp.program;
    const Rtg& g = *p.grammar;
    const std::size_t cols = p.columns();
    Execution ex;
    ex.globals.assign(p.global_count(), Value());
    for (std::size_t a = 0; a < g.nonterminals().size(); ++a) {
        if (g.nonterminal(a).type == ScalarType::Bool) {
            for (std::size_t c = 0; c < cols; ++c) {
                ex.globals[p.global(a, c)] = Value(false);
            }
        }
    }
    BitReader reader(bits);

    struct Frame {
        const Production* prod;
        std::size_t next_child;
        std::vector<ValueVector> temps; // child snapshots
    };
    std::vector<Frame> stack;
    auto enter = [&](std::size_t nt) {
        ++ex.calls;
        const auto prods = g.productions(nt);
        const std::size_t j = read_production(reader, prods.size());
        stack.push_back({&prods[j - 1], 0, {}});
    };
    enter(g.start());
    std::vector<Value> args;
    while (!stack.empty()) {
        if (ex.calls > call_budget) {
            ex.outcome = Outcome::Diverged;
            ex.consumed = reader.consumed();
            return ex;
        }
        Frame& f = stack.back();
        if (f.next_child < f.prod->rhs.size()) {
            enter(f.prod->rhs[f.next_child]);
            continue;
        }
        const Production& prod = *f.prod;
        for (std::size_t c = 0; c < cols; ++c) {
            args.clear();
            for (const auto& t : f.temps) {
                args.push_back(t[c]);
            }
            ex.globals[p.global(prod.lhs, c)] = apply_symbol(*prod.symbol, args, p.envs[c]);
        }
        stack.pop_back();
        if (!stack.empty()) {
            Frame& parent = stack.back();
            const std::size_t child = parent.prod->rhs[parent.next_child];
            ValueVector snap(ex.globals.begin() + static_cast<std::ptrdiff_t>(p.global(child, 0)),
                             ex.globals.begin() + static_cast<std::ptrdiff_t>(p.global(child, 0) + cols));
            parent.temps.push_back(std::move(snap));
            ++parent.next_child;
        }
    }
    ex.consumed = reader.consumed();
    const std::size_t s0 = p.global(g.start(), 0);
    ex.start_values.assign(ex.globals.begin() + static_cast<std::ptrdiff_t>(s0),
                           ex.globals.begin() + static_cast<std::ptrdiff_t>(s0 + cols));
    ex.outcome = p.satisfies_all(ex.start_values) ? Outcome::AssertionFalsified : Outcome::AssertionHeld;
    return ex;
}

std::string emission_filename(std::string_view problem, std::size_t k, std::string_view ext) {
    return std::string(problem) + "." + std::to_string(k) + "ex." + std::string(ext);
}

} // namespace unreal
