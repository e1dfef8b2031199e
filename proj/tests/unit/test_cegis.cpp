// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>

#include "support.hpp"
#include "unreal/cegis.hpp"

using namespace unreal;
using unreal::testing::ints;

namespace {

const Problem& g2() {
    static const Problem p = testing::load_benchmark("max2_limited_if");
    return p;
}

const Problem& g1() {
    static const Problem p = testing::load_benchmark("max2_full");
    return p;
}

VerifierConfig box(int lo, int hi, bool parallel = true) {
    VerifierConfig c;
    c.mode = BoundedBox{lo, hi};
    c.parallel = parallel;
    return c;
}

TermPtr max_term() {
    const Rtg& g = g1().g();
    const auto b = *g.find_nonterminal("BExpr");
    const TermPtr x = make_term(g, 0, "x");
    const TermPtr y = make_term(g, 0, "y");
    return make_term(g, 0, "ite", {make_term(g, b, ">", {y, x}), y, x});
}

bool have_z3() { return std::system("z3 -version > /dev/null 2>&1") == 0; }

} // namespace

TEST_CASE("box verifier returns the least failing point") {
    const Rtg& g = g2().g();
    const TermPtr t = make_term(g, 0, "+", {make_term(g, 0, "x"), make_term(g, 0, "1")});
    for (bool parallel : {false, true}) {
        const VerifyResult r = verify_candidate(*t, g2(), box(-2, 2, parallel));
        REQUIRE(r.kind == VerifyResult::Kind::Counterexample);
        CHECK(r.example == ints({-2, -2}));
        CHECK(r.inputs == ints({-2, -2}));
    }
    const TermPtr y = make_term(g, 0, "y");
    const VerifyResult r = verify_candidate(*y, g2(), box(-2, 2));
    REQUIRE(r.kind == VerifyResult::Kind::Counterexample);
    CHECK(r.example == ints({-1, -2}));
}

TEST_CASE("box verifier accepts max") {
    const VerifyResult r = verify_candidate(*max_term(), g1(), box(-8, 8));
    CHECK(r.kind == VerifyResult::Kind::Pass);
    CHECK(r.bounded);
    CHECK(verify_candidate(*max_term(), g1(), box(3, 2)).kind == VerifyResult::Kind::Error);
}

TEST_CASE("counterexamples include call results in the hypothesis form") {
    const Problem p = testing::load_benchmark("nested_identity");
    const Rtg& g = p.g();
    const TermPtr succ = make_term(g, 0, "+", {make_term(g, 0, "x"), make_term(g, 1, "1")});
    CHECK(complete_example(p, *succ, ints({3})) == ints({3, 4, 5}));
    const VerifyResult r = verify_candidate(*succ, p, box(-1, 1));
    REQUIRE(r.kind == VerifyResult::Kind::Counterexample);
    CHECK(r.example == ints({-1, 0, 1}));
    CHECK(r.inputs == ints({-1}));
    CHECK(verify_candidate(*make_term(g, 0, "x"), p, box(-1, 1)).kind == VerifyResult::Kind::Pass);
}

TEST_CASE("verification query") {
    const std::string q = verification_query(*max_term(), g1());
    CHECK(q.rfind("(set-logic LIA)\n", 0) == 0);
    CHECK(q.find("(declare-fun x () Int)") != std::string::npos);
    CHECK(q.find("(define-fun f ((x Int) (y Int)) Int (ite (> y x) y x))") != std::string::npos);
    CHECK(q.find("(assert (not ") != std::string::npos);
    CHECK(q.find("(check-sat)\n(get-value (x y))") != std::string::npos);
}

TEST_CASE("external solver verifier") {
    if (!have_z3()) return;
    VerifierConfig smt;
    smt.mode = ExternalSmt{"z3 -in"};
    CHECK(verify_candidate(*max_term(), g1(), smt).kind == VerifyResult::Kind::Pass);
    const Rtg& g = g2().g();
    const TermPtr x = make_term(g, 0, "x");
    const VerifyResult r = verify_candidate(*x, g2(), smt);
    REQUIRE(r.kind == VerifyResult::Kind::Counterexample);
    CHECK(r.inputs[1].as_int() > r.inputs[0].as_int());
}

TEST_CASE("external solver failures are errors") {
    VerifierConfig bad;
    bad.mode = ExternalSmt{"echo banana"};
    const VerifyResult r = verify_candidate(*max_term(), g1(), bad);
    CHECK(r.kind == VerifyResult::Kind::Error);
    CHECK(r.error.find("banana") != std::string::npos);
    VerifierConfig slow;
    slow.mode = ExternalSmt{"sleep 5"};
    slow.timeout = std::chrono::milliseconds(100);
    const VerifyResult t = verify_candidate(*max_term(), g1(), slow);
    CHECK(t.kind == VerifyResult::Kind::Error);
    CHECK(t.error == "solver timed out");
}

TEST_CASE("seed strategies") {
    SeedOptions o;
    CHECK(seed_examples_from_spec(g2(), o).items() == std::vector<ValueVector>{ints({0, 0})});
    o.strategy = SeedStrategy::Empty;
    CHECK(seed_examples_from_spec(g2(), o).empty());
    o.strategy = SeedStrategy::Corners;
    CHECK(seed_examples_from_spec(g2(), o).items() == testing::e4());
    o.strategy = SeedStrategy::User;
    o.user = {ints({1, 2}), ints({1, 2}), ints({3, 4})};
    CHECK(seed_examples_from_spec(g2(), o).size() == 2);
    o.strategy = SeedStrategy::Random;
    o.lo = -5;
    o.hi = 5;
    o.random_seed = 9;
    const auto a = seed_examples_from_spec(g2(), o);
    const auto b = seed_examples_from_spec(g2(), o);
    CHECK(a.items() == b.items());
    for (const auto& t : a.items()) {
        for (const auto& v : t) CHECK(Interval{Integer(-5), Integer(5)}.contains(v.as_int()));
    }
    const Problem nested = testing::load_benchmark("nested_identity");
    o.strategy = SeedStrategy::Zeros;
    CHECK(seed_examples_from_spec(nested, o).items() == std::vector<ValueVector>{ints({0, 0, 0})});
}

TEST_CASE("max2 over G2 is unrealizable after a few rounds") {
    CegisOptions o;
    const CegisVerdict v = cegis_loop(g2(), o, ExampleSet({ints({0, 1})}));
    REQUIRE(v.kind == CegisVerdict::Kind::Unrealizable);
    CHECK(v.rounds <= 6);
    CHECK(v.examples.size() >= 3);
    CHECK(v.examples.size() <= 5);
    REQUIRE(v.certificate);
    CHECK(v.certificate->examples == v.examples);
    CHECK(v.trace.back().verdict == "proved-unsat");
    for (std::size_t i = 0; i + 1 < v.trace.size(); ++i) {
        CHECK(v.trace[i].counterexample);
        CHECK(v.trace[i + 1].examples == v.trace[i].examples + 1);
    }
}

TEST_CASE("max2 over G1 is realizable") {
    CegisOptions o;
    const CegisVerdict v = cegis_loop(g1(), o, seed_examples_from_spec(g1(), {}));
    REQUIRE(v.kind == CegisVerdict::Kind::Realizable);
    CHECK_FALSE(v.verified);
    CHECK(verify_candidate(*v.term, g1(), box(-8, 8)).kind == VerifyResult::Kind::Pass);
    CHECK(to_string(CegisVerdict::Kind::Realizable) == "realizable");
}

TEST_CASE("boolean-only inputs verify without bounds") {
    const Problem p = parse_problem("(set-logic LIA)\n(synth-fun f ((b Bool)) Int ((Start Int ((ite B Start Start) 0 1))"
                                    " (B Bool (b (not B)))))\n(declare-var b Bool)\n"
                                    "(constraint (and (=> b (= (f b) 1)) (=> (not b) (= (f b) 0))))\n(check-synth)\n");
    const CegisVerdict v = cegis_loop(p, {}, seed_examples_from_spec(p, {}));
    REQUIRE(v.kind == CegisVerdict::Kind::Realizable);
    CHECK(v.verified);
}

TEST_CASE("an empty seed set starts from the smallest term") {
    const CegisVerdict v = cegis_loop(testing::load_benchmark("zero_const"), {}, ExampleSet());
    REQUIRE(v.kind == CegisVerdict::Kind::Realizable);
    CHECK(v.rounds == 1);
    CHECK(v.examples.empty());
    CHECK(v.trace[0].engine == "smallest-term");
}

TEST_CASE("the identity grammar keeps growing its example set") {
    CegisOptions o;
    o.max_rounds = 10;
    o.budgets.search.max_term_size = 20;
    const Problem p = testing::load_benchmark("sy_eq");
    const CegisVerdict v = cegis_loop(p, o, seed_examples_from_spec(p, {}));
    CHECK(v.kind == CegisVerdict::Kind::Unknown);
    CHECK(v.rounds == 10);
    REQUIRE(v.trace.size() == 10);
    for (std::size_t i = 1; i < v.trace.size(); ++i) CHECK(v.trace[i].examples > v.trace[i - 1].examples);
    CHECK(v.examples.size() == 11);
}

TEST_CASE("loops are deterministic") {
    const CegisVerdict a = cegis_loop(g2(), {}, seed_examples_from_spec(g2(), {}));
    const CegisVerdict b = cegis_loop(g2(), {}, seed_examples_from_spec(g2(), {}));
    CHECK(a.examples == b.examples);
    CHECK(a.rounds == b.rounds);
    CHECK(to_text(*a.certificate, g2().g()) == to_text(*b.certificate, g2().g()));
}

TEST_CASE("time budget and cancellation") {
    CegisOptions o;
    o.time_budget = std::chrono::milliseconds(200);
    o.max_rounds = 1000;
    const auto t0 = std::chrono::steady_clock::now();
    const CegisVerdict v = cegis_loop(testing::load_benchmark("sy_eq"), o, ExampleSet({ints({0})}));
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    CHECK(v.kind == CegisVerdict::Kind::Unknown);
    CHECK(ms.count() < 5000);
    std::stop_source s;
    s.request_stop();
    const CegisVerdict c = cegis_loop(g2(), {}, ExampleSet({ints({0, 1})}), s.get_token());
    CHECK(c.kind == CegisVerdict::Kind::Unknown);
    CHECK(c.reason == "time budget exhausted");
    o.max_rounds = 0;
    CHECK_THROWS_AS(cegis_loop(g2(), o, ExampleSet()), std::invalid_argument);
}

TEST_CASE("loop with the external solver") {
    if (!have_z3()) return;
    CegisOptions o;
    o.verifier.mode = ExternalSmt{"z3 -in"};
    const CegisVerdict v = cegis_loop(g1(), o, seed_examples_from_spec(g1(), {}));
    REQUIRE(v.kind == CegisVerdict::Kind::Realizable);
    CHECK(v.verified);
}
