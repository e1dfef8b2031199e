// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <regex>
#include <sstream>
#include <set>
#include <string>
#include <vector>

#include "unreal/encoder.hpp"
#include "unreal/problem.hpp"

namespace unreal::testing {

inline std::string source_dir() { return UNREAL_SOURCE_DIR; }

inline Problem load_benchmark(const std::string& stem) {
    return parse_problem_file(source_dir() + "/benchmarks/" + stem + ".sl");
}

inline ValueVector ints(std::initializer_list<long long> xs) {
    ValueVector v;
    for (auto x : xs) v.push_back(Value::of_int(x));
    return v;
}

/// Shape of an emitted C program: function definitions, guarded branches,
/// `nd()` calls, global value slots and disjuncts of the final assertion.
struct CShape {
    std::size_t functions = 0;
    std::size_t branches = 0;
    std::size_t nd_calls = 0;
    std::size_t slots = 0;
    std::size_t disjuncts = 0;
    friend bool operator==(const CShape&, const CShape&) = default;
};

inline CShape c_shape(const std::string& text) {
    CShape s;
    static const std::regex def(R"(^void \w+\(.*\)\{$)");
    static const std::regex slot(R"(^(int|bool) (I_\w+)(, I_\w+)*;$)");
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (std::regex_match(line, def)) ++s.functions;
        if (std::regex_match(line, slot)) s.slots += 1 + static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
        if (line.find("// Encodes") != std::string::npos) ++s.branches;
        for (auto p = line.find("nd()"); p != std::string::npos; p = line.find("nd()", p + 1)) ++s.nd_calls;
        if (line.find("assert(") != std::string::npos) {
            for (auto p = line.find("!spec("); p != std::string::npos; p = line.find("!spec(", p + 1)) ++s.disjuncts;
        }
    }
    return s;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::vector<ValueVector> e4() { return {ints({0, 0}), ints({0, 1}), ints({1, 0}), ints({1, 1})}; }

/// Output vectors of every term with at most `max_size` nodes, per
/// nonterminal, by composing the exact-size sets level by level.
inline std::vector<std::set<ValueVector>> reachable_vectors(const ProgramIr& program, std::size_t max_size) {
    const Rtg& g = *program.grammar;
    const std::size_t count = g.nonterminals().size();
    const std::size_t cols = program.columns();
    std::vector<std::vector<std::set<ValueVector>>> exact(count, std::vector<std::set<ValueVector>>(max_size + 1));
    for (std::size_t size = 1; size <= max_size; ++size) {
        for (std::size_t nt = 0; nt < count; ++nt) {
            for (const auto& p : g.productions(nt)) {
                const std::size_t arity = p.rhs.size();
                if (arity == 0) {
                    if (size != 1) continue;
                    ValueVector v;
                    for (std::size_t c = 0; c < cols; ++c) v.push_back(apply_symbol(*p.symbol, {}, program.envs[c]));
                    exact[nt][1].insert(v);
                    continue;
                }
                if (size < arity + 1) continue;
                // every split of size-1 into `arity` positive parts
                std::vector<std::size_t> parts(arity, 1);
                std::function<void(std::size_t, std::size_t)> split = [&](std::size_t a, std::size_t left) {
                    if (a + 1 == arity) {
                        parts[a] = left;
                        std::vector<std::vector<ValueVector>> pools;
                        for (std::size_t i = 0; i < arity; ++i) {
                            const auto& s = exact[p.rhs[i]][parts[i]];
                            pools.emplace_back(s.begin(), s.end());
                            if (pools.back().empty()) return;
                        }
                        std::vector<std::size_t> idx(arity, 0);
                        for (;;) {
                            ValueVector v;
                            for (std::size_t c = 0; c < cols; ++c) {
                                std::vector<Value> args;
                                for (std::size_t i = 0; i < arity; ++i) args.push_back(pools[i][idx[i]][c]);
                                v.push_back(apply_symbol(*p.symbol, args, program.envs[c]));
                            }
                            exact[nt][size].insert(std::move(v));
                            std::size_t i = arity;
                            while (i > 0) {
                                --i;
                                if (++idx[i] < pools[i].size()) break;
                                idx[i] = 0;
                                if (i == 0) return;
                            }
                        }
                    }
                    for (std::size_t take = 1; take + (arity - a - 1) <= left; ++take) {
                        parts[a] = take;
                        split(a + 1, left - take);
                    }
                };
                split(0, size - 1);
            }
        }
    }
    std::vector<std::set<ValueVector>> out(count);
    for (std::size_t nt = 0; nt < count; ++nt) {
        for (const auto& s : exact[nt]) out[nt].insert(s.begin(), s.end());
    }
    return out;
}

struct RandomInstance {
    std::string text;
    Problem problem;
    std::vector<ValueVector> examples;
};

/// Small random grammar (at most six productions over Start, an optional
/// Int helper T and an optional Bool nonterminal B) with a random spec and
/// one to three examples.
inline RandomInstance random_instance(std::mt19937_64& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto lit = [&] {
        const int c = pick(-3, 3);
        return c < 0 ? "(- " + std::to_string(-c) + ")" : std::to_string(c);
    };
    const bool two_vars = pick(0, 1) == 1;
    const bool has_t = pick(0, 2) == 0;
    const bool has_b = pick(0, 1) == 1;
    std::vector<std::string> start, t, b;
    std::vector<std::string> leaves = {"x"};
    if (two_vars) leaves.push_back("y");
    start.push_back(pick(0, 2) == 0 ? lit() : leaves[static_cast<std::size_t>(pick(0, static_cast<int>(leaves.size()) - 1))]);
    if (has_t) t.push_back(pick(0, 1) ? lit() : "x");
    if (has_b) b.push_back(has_t ? "(> Start T)" : "(> Start Start)");
    std::vector<std::string> extra = {"(+ Start Start)", "(- Start Start)", lit(), "x", two_vars ? "y" : lit()};
    if (has_t) {
        extra.push_back("(+ Start T)");
        extra.push_back("(+ T T)");
    }
    if (has_b) {
        extra.push_back("(ite B Start Start)");
        extra.push_back("(not B)");
        extra.push_back(has_t ? "(= Start T)" : "(= Start Start)");
        extra.push_back("(and B B)");
    }
    std::size_t total = start.size() + t.size() + b.size();
    const std::size_t target = static_cast<std::size_t>(pick(static_cast<int>(total), 6));
    while (total < target) {
        const std::string& e = extra[static_cast<std::size_t>(pick(0, static_cast<int>(extra.size()) - 1))];
        std::vector<std::string>* dst = &start;
        if (e == "(+ T T)") dst = &t;
        if (e == "(not B)" || e == "(and B B)" || e == "(= Start T)" || e == "(= Start Start)") dst = &b;
        if (std::find(dst->begin(), dst->end(), e) != dst->end()) {
            if (pick(0, 3) == 0) break;
            continue;
        }
        dst->push_back(e);
        ++total;
    }
    std::string params = two_vars ? "((x Int) (y Int))" : "((x Int))";
    std::string call = two_vars ? "(f x y)" : "(f x)";
    std::string grammar = "((Start Int (";
    for (std::size_t i = 0; i < start.size(); ++i) grammar += (i ? " " : "") + start[i];
    grammar += "))";
    if (has_t) {
        grammar += " (T Int (";
        for (std::size_t i = 0; i < t.size(); ++i) grammar += (i ? " " : "") + t[i];
        grammar += "))";
    }
    if (has_b) {
        grammar += " (B Bool (";
        for (std::size_t i = 0; i < b.size(); ++i) grammar += (i ? " " : "") + b[i];
        grammar += "))";
    }
    grammar += ")";
    std::string constraint;
    switch (pick(0, 3)) {
    case 0: {
        std::string rhs = "(+ ";
        rhs += pick(0, 1) ? "x x" : "x";
        if (two_vars && pick(0, 1)) rhs += " y";
        rhs += " " + lit() + ")";
        constraint = "(= " + call + " " + rhs + ")";
        break;
    }
    case 1:
        constraint = two_vars ? "(and (>= " + call + " x) (>= " + call + " y) (or (= " + call + " x) (= " + call + " y)))"
                              : "(or (= " + call + " x) (= " + call + " " + lit() + "))";
        break;
    case 2:
        constraint = "(and (>= " + call + " " + lit() + ") (<= " + call + " " + lit() + "))";
        break;
    default:
        constraint = "(= " + call + " " + lit() + ")";
        break;
    }
    RandomInstance inst;
    inst.text = "(set-logic LIA)\n(synth-fun f " + params + " Int " + grammar + ")\n(declare-var x Int)\n" +
                (two_vars ? "(declare-var y Int)\n" : "") + "(constraint " + constraint + ")\n(check-synth)\n";
    inst.problem = parse_problem(inst.text, "random");
    const int k = pick(1, 3);
    for (int i = 0; i < k; ++i) {
        ValueVector e;
        e.push_back(Value::of_int(pick(-3, 3)));
        if (two_vars) e.push_back(Value::of_int(pick(-3, 3)));
        if (std::find(inst.examples.begin(), inst.examples.end(), e) == inst.examples.end()) inst.examples.push_back(e);
    }
    return inst;
}

} // namespace unreal::testing
