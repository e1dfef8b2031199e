// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <random>

#include <boost/random/uniform_int_distribution.hpp>

#include "unreal/cegis.hpp"

namespace unreal {

ExampleSet::ExampleSet(const std::vector<ValueVector>& tuples) {
    for (const auto& t : tuples) add(t);
}

bool ExampleSet::add(ValueVector tuple) {
    if (!index_.insert(tuple).second) return false;
    items_.push_back(std::move(tuple));
    return true;
}

ExampleSet seed_examples_from_spec(const Problem& problem, const SeedOptions& options) {
    const FlatSpec& spec = problem.spec;
    const auto vars = spec.example_vars();
    ExampleSet out;
    switch (options.strategy) {
    case SeedStrategy::Empty:
        break;
    case SeedStrategy::Zeros: {
        ValueVector t;
        for (auto v : vars) t.push_back(spec.vars[v].type == ScalarType::Int ? Value::of_int(0) : Value::of_bool(false));
        out.add(std::move(t));
        break;
    }
    case SeedStrategy::Corners: {
        const std::size_t n = vars.size();
        for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
            ValueVector t;
            for (std::size_t i = 0; i < n; ++i) {
                const bool high = (bits >> (n - 1 - i)) & 1U;
                t.push_back(spec.vars[vars[i]].type == ScalarType::Int ? Value::of_int(high ? options.hi : options.lo)
                                                                        : Value::of_bool(high));
            }
            out.add(std::move(t));
        }
        break;
    }
    case SeedStrategy::User:
        for (const auto& t : options.user) out.add(t);
        break;
    case SeedStrategy::Random: {
        std::mt19937_64 rng(options.random_seed);
        boost::random::uniform_int_distribution<Integer> ints(options.lo, options.hi);
        boost::random::uniform_int_distribution<int> coin(0, 1);
        for (std::size_t i = 0; i < options.random_count; ++i) {
            ValueVector t;
            for (auto v : vars) {
                t.push_back(spec.vars[v].type == ScalarType::Int ? Value::of_int(ints(rng)) : Value::of_bool(coin(rng) == 1));
            }
            out.add(std::move(t));
        }
        break;
    }
    }
    return out;
}

} // namespace unreal
