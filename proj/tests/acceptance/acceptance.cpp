// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "unreal/cli.hpp"

using namespace unreal;
using unreal::testing::ints;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_s(double s) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << s << " s";
    return os.str();
}

std::string benchmark(const std::string& stem) { return testing::source_dir() + "/benchmarks/" + stem + ".sl"; }

const Problem& g1() {
    static const Problem p = testing::load_benchmark("max2_full");
    return p;
}

const Problem& g2() {
    static const Problem p = testing::load_benchmark("max2_limited_if");
    return p;
}

Result max2_unrealizable() {
    const auto t0 = Clock::now();
    const auto res = cli::prove_file(benchmark("max2_limited_if"), {});
    const double s = seconds_since(t0);
    const std::size_t k = res.report.examples.size();
    return {res.report.verdict == "unrealizable" && k >= 3 && k <= 6 && s < 10,
            res.report.verdict + " with " + std::to_string(k) + " examples in " + fmt_s(s)};
}

Result max2_realizable() {
    const auto t0 = Clock::now();
    const auto res = cli::prove_file(benchmark("max2_full"), {});
    const double s = seconds_since(t0);
    const std::string& v = res.report.verdict;
    if ((v != "realizable" && v != "realizable-bounded") || !res.report.witness_bits) return {false, v};
    const Decoded d = decode(ChoiceString::from_numeral(*res.report.witness_bits), g1().g(), g1().g().start());
    VerifierConfig cfg;
    cfg.mode = BoundedBox{-8, 8};
    const bool ok = verify_candidate(*d.term, g1(), cfg).kind == VerifyResult::Kind::Pass;
    return {ok && to_string(*d.term) == *res.report.witness && s < 10,
            v + " with " + to_string(*d.term) + " in " + fmt_s(s)};
}

Result choice_numeral() {
    const Rtg& g = g2().g();
    const TermPtr t = make_term(g, 0, "+", {make_term(g, 0, "x"), make_term(g, 0, "1")});
    const std::string numeral = encode_number(*t, g).to_numeral();
    const Decoded d = decode(ChoiceString::from_integer(69), g, g.start());
    return {numeral == "1000101" && equal(*d.term, *t) && d.consumed == 7,
            "#((+ x 1)) = " + numeral + ", decode(69) = " + to_string(*d.term) + " consuming " +
                std::to_string(d.consumed) + " bits"};
}

Result interpret_matches_eval() {
    const auto t0 = Clock::now();
    std::vector<std::vector<ValueVector>> sets = {{ints({0, 1})}, testing::e4()};
    for (const char* stem : {"max2_limited_if", "max2_full"}) {
        const auto res = cli::prove_file(benchmark(stem), {});
        if (!res.report.examples.empty()) sets.push_back(res.report.examples);
    }
    std::size_t checked = 0, mismatches = 0;
    for (const Problem* p : {&g1(), &g2()}) {
        for (const auto& e : sets) {
            const auto rp = build_program(*p, e);
            for_each_term(p->g(), p->g().start(), 10, [&](const TermPtr& t) {
                const Execution x = interpret(rp, encode_number(*t, p->g()));
                if (x.start_values != eval_vector(*t, rp.program.envs)) ++mismatches;
                ++checked;
                return true;
            });
        }
    }
    const double s = seconds_since(t0);
    return {mismatches == 0 && s < 60, std::to_string(checked) + " term/example-set pairs, " +
                                           std::to_string(mismatches) + " mismatches in " + fmt_s(s)};
}

Result padding_invariance() {
    const Rtg& g = g2().g();
    std::mt19937_64 rng(42);
    std::size_t mismatches = 0;
    const std::size_t trials = 10000;
    for (std::size_t i = 0; i < trials; ++i) {
        std::vector<bool> raw(1 + rng() % 32);
        for (auto&& b : raw) b = (rng() & 1U) != 0;
        const Decoded d = decode(ChoiceString(raw), g, g.start());
        std::vector<bool> minimal(d.consumed);
        for (std::size_t j = 0; j < d.consumed && j < raw.size(); ++j) minimal[j] = raw[j];
        std::vector<bool> pad(rng() % 32);
        for (auto&& b : pad) b = (rng() & 1U) != 0;
        const ChoiceString padded = ChoiceString(minimal).padded(ChoiceString(pad));
        const Decoded e = decode(padded, g, g.start());
        if (!equal(*e.term, *d.term) || e.consumed != d.consumed) ++mismatches;
    }
    return {mismatches == 0, std::to_string(trials) + " padded strings, " + std::to_string(mismatches) + " mismatches"};
}

Result identity_growth() {
    cli::ProveOptions o;
    o.max_rounds = 10;
    o.term_size = 20;
    const auto t0 = Clock::now();
    const auto res = cli::prove_file(benchmark("sy_eq"), o);
    const double s = seconds_since(t0);
    bool increasing = res.report.trace.size() == 10;
    for (std::size_t i = 1; i < res.report.trace.size(); ++i) {
        increasing = increasing && res.report.trace[i].examples > res.report.trace[i - 1].examples;
    }
    return {res.report.verdict == "unknown" && res.report.rounds == 10 && increasing && s < 30,
            res.report.verdict + " after " + std::to_string(res.report.rounds) + " rounds, |E| " +
                (increasing ? "strictly increasing" : "not increasing") + ", " + fmt_s(s)};
}

Result coprime_constants() {
    const auto t0 = Clock::now();
    const Problem p = testing::load_benchmark("limited_const");
    const CegisVerdict v = cegis_loop(p, {}, seed_examples_from_spec(p, {}));
    const double s = seconds_since(t0);
    bool congruence = v.certificate && !v.certificate->rejected.empty();
    if (v.certificate) {
        for (const auto& r : v.certificate->rejected) congruence = congruence && r.component == "congruence";
    }
    return {v.kind == CegisVerdict::Kind::Unrealizable && congruence && v.examples.size() <= 3 && s < 2,
            std::string(to_string(v.kind)) + " with " + std::to_string(v.examples.size()) + " examples" +
                (congruence ? ", every candidate excluded by congruence" : "") + " in " + fmt_s(s)};
}

Result soundness() {
    std::mt19937_64 rng(500);
    std::size_t violations = 0, proved = 0, vectors = 0;
    const std::size_t instances = 500;
    for (std::size_t i = 0; i < instances; ++i) {
        const auto inst = testing::random_instance(rng);
        const auto rp = build_program(inst.problem, inst.examples);
        const auto fp = compute_fixpoint(rp.program);
        if (!fp.converged) {
            ++violations;
            continue;
        }
        const auto reach = testing::reachable_vectors(rp.program, 10);
        bool realizable = false;
        for (std::size_t nt = 0; nt < reach.size(); ++nt) {
            for (const auto& v : reach[nt]) {
                ++vectors;
                if (!fp.state.nts[nt].contains(v)) ++violations;
                if (nt == inst.problem.g().start() && rp.program.satisfies_all(v)) realizable = true;
            }
        }
        if (abstract_prove(rp).kind == ReachVerdict::Kind::ProvedUnsat) {
            ++proved;
            if (realizable) ++violations;
        }
    }
    return {violations == 0, std::to_string(instances) + " instances, " + std::to_string(vectors) +
                                 " enumerated vectors, " + std::to_string(proved) + " proved unsat, " +
                                 std::to_string(violations) + " violations"};
}

Result bits_vs_spec() {
    std::mt19937_64 rng(200);
    std::size_t mismatches = 0, falsified = 0, diverged = 0;
    const std::size_t trials = 200;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto inst = testing::random_instance(rng);
        const auto rp = build_program(inst.problem, inst.examples);
        std::vector<bool> raw(rng() % 40);
        for (auto&& b : raw) b = (rng() & 1U) != 0;
        const ChoiceString bits(raw);
        const Execution x = interpret(rp, bits, 5000);
        if (x.outcome == unreal::Outcome::Diverged) {
            ++diverged;
            try {
                (void)decode(bits, inst.problem.g(), inst.problem.g().start(), 5000);
                ++mismatches;
            } catch (const DecodeBudgetExceeded&) {
            }
            continue;
        }
        const Decoded d = decode(bits, inst.problem.g(), inst.problem.g().start(), 5000);
        const FlatSpec& spec = inst.problem.spec;
        bool all = true;
        for (const auto& e : inst.examples) {
            ValueVector outs;
            for (std::size_t j = 0; j < spec.slot_count(); ++j) outs.push_back(eval(*d.term, spec.call_arguments(e, j)));
            all = all && eval_spec(spec, e, outs);
        }
        if (all) ++falsified;
        if ((x.outcome == unreal::Outcome::AssertionFalsified) != all) ++mismatches;
    }
    return {mismatches == 0, std::to_string(trials) + " triples, " + std::to_string(falsified) +
                                 " reach the failing assertion, " + std::to_string(diverged) + " diverge, " +
                                 std::to_string(mismatches) + " mismatches"};
}

Result emission_goldens() {
    const std::string dir = testing::source_dir() + "/tests/golden/";
    const auto one = build_program(g2(), {ints({0, 1})});
    const auto four = build_program(g2(), testing::e4());
    const std::string c1 = emit_c(one), c4 = emit_c(four);
    const bool same = c1 == testing::read_file(dir + "max2_limited_if.1ex.c") &&
                      c4 == testing::read_file(dir + "max2_limited_if.4ex.c");
    const auto s1 = testing::c_shape(c1), s4 = testing::c_shape(c4);
    const bool shape = s1 == testing::CShape{1, 5, 4, 1, 1} && s4 == testing::CShape{1, 5, 4, 4, 4};
    bool chc = true;
    for (const auto* rp : {&one, &four}) {
        const std::string text = emit_chc(*rp);
        const ChcSummary sum = check_chc(text);
        chc = chc && sum.ok && sum.predicates == 1 && sum.rules == 5 && sum.queries == 1 && !parse_sexprs(text).empty();
    }
    return {same && shape && chc, std::string("goldens ") + (same ? "match" : "differ") + ", shape " +
                                      (shape ? "1 function/5 branches/4 nd/k slots/k disjuncts" : "differs") +
                                      ", CHC " + (chc ? "well formed" : "malformed")};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"max2 over the conditional-free grammar is unrealizable", max2_unrealizable},
        {"max2 with conditionals is realizable", max2_realizable},
        {"choice-string numeral of (+ x 1)", choice_numeral},
        {"interpreted slot values equal term evaluation", interpret_matches_eval},
        {"padding after the consumed prefix is ignored", padding_invariance},
        {"identity grammar grows its example set", identity_growth},
        {"coprime constants refuted by congruences", coprime_constants},
        {"abstraction soundness on random instances", soundness},
        {"failing assertion iff the decoded term satisfies the examples", bits_vs_spec},
        {"emission goldens and CHC well-formedness", emission_goldens},
    };
    std::size_t failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
