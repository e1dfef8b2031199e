// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "unreal/kernels.hpp"
#include "unreal/reach.hpp"

using namespace unreal;
using unreal::testing::ints;

namespace {

const Problem& g2() {
    static const Problem p = testing::load_benchmark("max2_limited_if");
    return p;
}

Problem inline_problem(const std::string& grammar, const std::string& constraint, bool two_vars = false) {
    const std::string params = two_vars ? "((x Int) (y Int))" : "((x Int))";
    return parse_problem("(set-logic LIA)\n(synth-fun f " + params + " Int " + grammar + ")\n(declare-var x Int)\n" +
                         (two_vars ? "(declare-var y Int)\n" : "") + "(constraint " + constraint + ")\n(check-synth)\n");
}

} // namespace

TEST_CASE("every G2 term on E4 satisfies o(1,1) = o(0,1) + o(1,0) - o(0,0)") {
    const auto rp = build_program(g2(), testing::e4());
    const auto fp = compute_fixpoint(rp.program);
    REQUIRE(fp.converged);
    const NtAbstraction& start = fp.state.nts[0];
    std::size_t terms = 0;
    for_each_term(g2().g(), 0, 9, [&](const TermPtr& t) {
        const ValueVector v = rp.program.evaluate(*t);
        CHECK(v[3].as_int() == v[1].as_int() + v[2].as_int() - v[0].as_int());
        CHECK(start.contains(v));
        ++terms;
        return true;
    });
    CHECK(terms > 1000);
    CHECK(start.affine.dimension() == 3);
    const auto rels = start.affine.relations();
    REQUIRE(rels.size() == 1);
    const auto& c = rels[0].coeffs;
    CHECK(rels[0].rhs == 0);
    CHECK(c[0] == c[3]);
    CHECK(c[1] == -c[3]);
    CHECK(c[2] == -c[3]);
    CHECK(start.excluded_by(ints({0, 1, 1, 1})) == "affine");
    CHECK(start.excluded_by(ints({0, 1, 1, 2})).empty());
}

TEST_CASE("max2 over G2 on E4 is proved unrealizable with a certificate") {
    const auto rp = build_program(g2(), testing::e4());
    const auto cands = spec_candidates(rp.program);
    CHECK(cands.finite);
    REQUIRE(cands.per_example.size() == 4);
    CHECK(cands.per_example[0] == std::vector<ValueVector>{ints({0})});
    CHECK(cands.per_example[3] == std::vector<ValueVector>{ints({1})});
    const ReachVerdict v = abstract_prove(rp);
    REQUIRE(v.kind == ReachVerdict::Kind::ProvedUnsat);
    CHECK(v.engine == "abstract");
    REQUIRE(v.certificate);
    const Certificate& cert = *v.certificate;
    REQUIRE(cert.rejected.size() == 1);
    CHECK(cert.rejected[0].vector == ints({0, 1, 1, 1}));
    CHECK(cert.rejected[0].component == "affine");
    CHECK(cert.column_names == std::vector<std::string>{"o[e0]", "o[e1]", "o[e2]", "o[e3]"});
    const std::string text = to_text(cert, g2().g());
    CHECK(text.rfind("unrealizability certificate", 0) == 0);
    CHECK(text.find("(0,1,1,1) excluded by affine") != std::string::npos);
    CHECK(text.find("conclusion: no term satisfies the specification on these 4 examples") != std::string::npos);
}

TEST_CASE("a single example of max2 over G2 is realizable") {
    const auto rp = build_program(g2(), {ints({0, 1})});
    CHECK(abstract_prove(rp).kind == ReachVerdict::Kind::Unknown);
    const ReachVerdict v = bounded_search(rp);
    REQUIRE(v.kind == ReachVerdict::Kind::SatWitness);
    CHECK(v.engine == "search");
    const SatWitness& w = *v.witness;
    CHECK(rp.program.satisfies_all(rp.program.evaluate(*w.term)));
    CHECK(w.bits == encode_number(*w.term, g2().g()));
    CHECK(w.outputs == rp.program.evaluate(*w.term));
    const Execution e = interpret(rp, w.bits);
    CHECK(e.outcome == Outcome::AssertionFalsified);
    const ReachVerdict d = decide(rp);
    CHECK(d.kind == ReachVerdict::Kind::SatWitness);
}

TEST_CASE("coprime constants are excluded by the congruence domain") {
    const Problem p = testing::load_benchmark("limited_const");
    const auto rp = build_program(p, {ints({0})});
    const ReachVerdict v = abstract_prove(rp);
    REQUIRE(v.kind == ReachVerdict::Kind::ProvedUnsat);
    REQUIRE(v.certificate->rejected.size() == 1);
    CHECK(v.certificate->rejected[0].vector == ints({1}));
    CHECK(v.certificate->rejected[0].component == "congruence");
    const auto fp = compute_fixpoint(rp.program);
    CHECK(fp.state.nts[0].congruences[0] == make_congruence(2, 0));
}

TEST_CASE("a reachable candidate leaves the abstract engine inconclusive") {
    const Problem p = testing::load_benchmark("zero_const");
    const auto rp = build_program(p, {ints({7})});
    const ReachVerdict a = abstract_prove(rp);
    CHECK(a.kind == ReachVerdict::Kind::Unknown);
    CHECK(a.reason.rfind("candidate-reachable", 0) == 0);
    const ReachVerdict s = bounded_search(rp);
    REQUIRE(s.kind == ReachVerdict::Kind::SatWitness);
    CHECK(to_string(*s.witness->term) == "0");
    CHECK(s.witness->bits.empty());
}

TEST_CASE("x + x is found for a doubling spec") {
    const Problem p = inline_problem("((Start Int ((+ Start Start) x)))", "(= (f x) (+ x x))");
    const auto rp = build_program(p, {ints({3})});
    const ReachVerdict s = bounded_search(rp);
    REQUIRE(s.kind == ReachVerdict::Kind::SatWitness);
    CHECK(to_string(*s.witness->term) == "(+ x x)");
    CHECK(s.witness->outputs == ints({6}));
}

TEST_CASE("unbounded or huge candidate sets are reported") {
    const Problem open = inline_problem("((Start Int ((+ Start Start) x 2)))", "(>= (f x) x)");
    const ReachVerdict a = abstract_prove(build_program(open, {ints({1})}));
    CHECK(a.kind == ReachVerdict::Kind::Unknown);
    CHECK(a.reason.rfind("imprecision", 0) == 0);
    AbstractOptions tight;
    tight.candidate_limit = 1;
    const Problem wide = inline_problem("((Start Int ((+ Start Start) 2)))", "(and (>= (f x) 0) (<= (f x) 9))");
    const ReachVerdict b = abstract_prove(build_program(wide, {ints({0}), ints({1})}), tight);
    CHECK(b.kind == ReachVerdict::Kind::Unknown);
    CHECK(b.reason.rfind("imprecision", 0) == 0);
    // odd outputs are pruned per coordinate before vectors are formed
    const ReachVerdict c = abstract_prove(build_program(wide, {ints({0}), ints({1})}));
    CHECK(c.kind == ReachVerdict::Kind::Unknown);
    CHECK(c.reason.rfind("candidate-reachable", 0) == 0);
    const Problem nested = testing::load_benchmark("nested_identity");
    const ReachVerdict d = abstract_prove(build_program(nested, {ints({0, 0, 0})}));
    CHECK(d.kind == ReachVerdict::Kind::Unknown);
    CHECK(d.reason.rfind("imprecision", 0) == 0);
}

TEST_CASE("search budgets") {
    const auto rp = build_program(g2(), testing::e4());
    SearchBudget b;
    b.max_vectors = 50;
    const ReachVerdict v = bounded_search(rp, b);
    CHECK(v.kind == ReachVerdict::Kind::Unknown);
    CHECK(v.reason.rfind("budget", 0) == 0);
    b.max_vectors = 200000;
    b.max_term_size = 5;
    const ReachVerdict w = bounded_search(rp, b);
    CHECK(w.kind == ReachVerdict::Kind::Unknown);
    CHECK(w.reason.rfind("budget", 0) == 0);
}

TEST_CASE("decide picks the definitive engine") {
    const ReachVerdict unsat = decide(build_program(g2(), testing::e4()));
    CHECK(unsat.kind == ReachVerdict::Kind::ProvedUnsat);
    CHECK(unsat.engine == "abstract");
    const Problem sy = testing::load_benchmark("sy_eq");
    const auto rp = build_program(sy, {ints({5})});
    const ReachVerdict sat = decide(rp);
    REQUIRE(sat.kind == ReachVerdict::Kind::SatWitness);
    CHECK(sat.engine == "search");
    CHECK(eval(*sat.witness->term, ints({5})) == Value::of_int(5));
    DecideBudgets tiny;
    tiny.search.max_vectors = 5;
    const ReachVerdict both = decide(build_program(testing::load_benchmark("max2_full"), testing::e4()), tiny);
    CHECK(both.kind == ReachVerdict::Kind::Unknown);
    CHECK(both.engine == "decide");
    CHECK(both.reason.find("budget") != std::string::npos);
}

TEST_CASE("cancellation") {
    std::stop_source s;
    s.request_stop();
    const auto rp = build_program(g2(), testing::e4());
    CHECK(compute_fixpoint(rp.program, {}, s.get_token()).cancelled);
    const ReachVerdict a = abstract_prove(rp, {}, s.get_token());
    CHECK(a.kind == ReachVerdict::Kind::Unknown);
    CHECK(a.reason == "cancelled");
    const ReachVerdict b = bounded_search(rp, {}, s.get_token());
    CHECK(b.kind == ReachVerdict::Kind::Unknown);
    CHECK(b.reason == "cancelled");
    CHECK(decide(rp, {}, s.get_token()).kind == ReachVerdict::Kind::Unknown);
}

TEST_CASE("column names") {
    CHECK(column_names(build_program(g2(), {ints({0, 1})}).program) == std::vector<std::string>{"o[e0]"});
    const Problem nested = testing::load_benchmark("nested_identity");
    CHECK(column_names(build_program(nested, {ints({0, 0, 0})}).program) ==
          std::vector<std::string>{"o[e0,0]", "o[e0,1]"});
}

TEST_CASE("fixpoints over random instances are sound") {
    std::mt19937_64 rng(2024);
    std::size_t proved = 0;
    for (int it = 0; it < 150; ++it) {
        const auto inst = testing::random_instance(rng);
        CAPTURE(inst.text);
        const auto rp = build_program(inst.problem, inst.examples);
        AbstractOptions o;
        o.record_history = true;
        const auto fp = compute_fixpoint(rp.program, o);
        REQUIRE(fp.converged);
        for (std::size_t i = 1; i < fp.history.size(); ++i) CHECK(fp.history[i].includes(fp.history[i - 1]));
        const auto reach = testing::reachable_vectors(rp.program, 7);
        bool realizable = false;
        for (std::size_t nt = 0; nt < reach.size(); ++nt) {
            for (const auto& v : reach[nt]) {
                CHECK(fp.state.nts[nt].contains(v));
                if (nt == inst.problem.g().start() && rp.program.satisfies_all(v)) realizable = true;
            }
        }
        const ReachVerdict v = abstract_prove(rp);
        if (v.kind == ReachVerdict::Kind::ProvedUnsat) {
            ++proved;
            CHECK_FALSE(realizable);
        }
    }
    CHECK(proved > 0);
}

TEST_CASE("parallel kernels agree with the serial references") {
    const auto rp = build_program(g2(), testing::e4());
    std::vector<ValueVector> pool;
    for (const auto& t : enumerate_terms(g2().g(), 0, 5)) pool.push_back(rp.program.evaluate(*t));
    kernels::ComposeBatch batch;
    batch.symbol = g2().g().productions(0)[0].symbol.get();
    batch.envs = rp.program.envs;
    batch.pools.resize(2);
    for (const auto& v : pool) {
        batch.pools[0].push_back(&v);
        batch.pools[1].push_back(&v);
    }
    const std::size_t n = batch.product_size();
    CHECK(n == pool.size() * pool.size());
    CHECK(batch.unrank(pool.size() + 2) == std::vector<std::size_t>{1, 2});
    std::vector<ValueVector> a, b;
    kernels::compose_serial(batch, 3, n, a);
    kernels::compose_parallel(batch, 3, n, b);
    CHECK(a == b);
    CHECK(a.size() == n - 3);
    for (std::size_t i = 0; i < 20; ++i) {
        const auto idx = batch.unrank(i + 3);
        ValueVector sum;
        for (std::size_t c = 0; c < 4; ++c) sum.push_back(Value::of_int(pool[idx[0]][c].as_int() + pool[idx[1]][c].as_int()));
        CHECK(a[i] == sum);
    }
    for (std::size_t target : {std::size_t{0}, std::size_t{777}, std::size_t{99999}}) {
        auto fails = [&](std::size_t i) { return i >= target && i % 3 == target % 3; };
        CHECK(kernels::first_failing_serial(100000, fails) == target);
        CHECK(kernels::first_failing_parallel(100000, fails) == target);
    }
    auto never = [](std::size_t) { return false; };
    CHECK_FALSE(kernels::first_failing_parallel(1000, never));
}
