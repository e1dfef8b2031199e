// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "support.hpp"

using namespace unreal;
using unreal::testing::ints;

namespace {

const Problem& g2_problem() {
    static const Problem p = testing::load_benchmark("max2_limited_if");
    return p;
}

const Problem& g1_problem() {
    static const Problem p = testing::load_benchmark("max2_full");
    return p;
}

ChoiceString random_bits(std::mt19937_64& rng, std::size_t n) {
    std::vector<bool> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = (rng() & 1U) != 0;
    return ChoiceString(std::move(b));
}

// Catalan numbers
std::size_t catalan(std::size_t n) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

} // namespace

TEST_CASE("production codes") {
    CHECK(production_code(1, 5) == std::vector<bool>{true});
    CHECK(production_code(3, 5) == std::vector<bool>{false, false, true});
    CHECK(production_code(5, 5) == std::vector<bool>{false, false, false, false});
    CHECK(production_code(1, 1).empty());
    CHECK(production_code(2, 2) == std::vector<bool>{false});
    for (std::size_t m = 1; m <= 6; ++m) {
        for (std::size_t i = 1; i <= m; ++i) {
            const ChoiceString bits(production_code(i, m));
            BitReader r(bits);
            CHECK(read_production(r, m) == i);
            CHECK(r.consumed() == bits.size());
        }
    }
}

TEST_CASE("choice string numerals") {
    const ChoiceString c = ChoiceString::from_numeral("1000101");
    CHECK(c.size() == 7);
    CHECK(c[0]);
    CHECK_FALSE(c[1]);
    CHECK(c[2]);
    CHECK(c[6]);
    CHECK(c.to_integer() == 69);
    CHECK(ChoiceString::from_integer(69) == c);
    CHECK(ChoiceString::from_integer(0).empty());
    const ChoiceString z = ChoiceString::from_numeral("0011");
    CHECK(z.to_numeral() == "0011");
    CHECK(z.padded(ChoiceString::from_numeral("1")).to_numeral() == "10011");
    CHECK(c.prefix(3).to_numeral() == "101");
    BitReader r(z);
    CHECK(r.next());
    CHECK(r.next());
    CHECK_FALSE(r.next());
    CHECK_FALSE(r.next());
    CHECK_FALSE(r.next());
    CHECK(r.consumed() == 5);
}

TEST_CASE("Plus(x,1) in G2 is 69") {
    const Rtg& g = g2_problem().g();
    const TermPtr t = make_term(g, 0, "+", {make_term(g, 0, "x"), make_term(g, 0, "1")});
    CHECK(to_string(*t) == "(+ x 1)");
    CHECK(t->size() == 3);
    const ChoiceString bits = encode_number(*t, g);
    CHECK(bits.to_numeral() == "1000101");
    CHECK(bits.to_integer() == 69);
    const Decoded d = decode(ChoiceString::from_integer(69), g, g.start());
    CHECK(equal(*d.term, *t));
    CHECK(d.consumed == 7);
}

TEST_CASE("evaluation") {
    const Rtg& g = g1_problem().g();
    const auto s = g.start();
    const auto b = *g.find_nonterminal("BExpr");
    const TermPtr x = make_term(g, s, "x");
    const TermPtr y = make_term(g, s, "y");
    const TermPtr gt = make_term(g, b, ">", {y, x});
    const TermPtr ite = make_term(g, s, "ite", {gt, y, x});
    CHECK(eval(*ite, ints({3, 5})) == Value::of_int(5));
    CHECK(eval(*ite, ints({7, 5})) == Value::of_int(7));
    const TermPtr n = make_term(g, b, "not", {gt});
    CHECK(eval(*n, ints({7, 5})) == Value::of_bool(true));
    const TermPtr a = make_term(g, b, "and", {gt, n});
    CHECK(eval(*a, ints({3, 5})) == Value::of_bool(false));
    CHECK(eval_vector(*ite, testing::e4()) == ints({0, 1, 1, 1}));
    CHECK_THROWS_AS(make_term(g, s, "+", {x}), TermError);
    CHECK_THROWS_AS(make_term(g, s, "ite", {x, y, x}), TermError);
    CHECK_THROWS_AS(make_term(g, s, "*", {x, y}), TermError);
}

TEST_CASE("encode/decode round trip over enumerated terms") {
    for (const Problem* p : {&g1_problem(), &g2_problem()}) {
        const Rtg& g = p->g();
        std::size_t n = 0;
        for_each_term(g, g.start(), 9, [&](const TermPtr& t) {
            const ChoiceString bits = encode_number(*t, g);
            const Decoded d = decode(bits, g, g.start());
            CHECK(equal(*d.term, *t));
            CHECK(d.consumed == bits.size());
            ++n;
            return true;
        });
        CHECK(n > 0);
    }
}

TEST_CASE("distinct terms get distinct numbers") {
    const Rtg& g = g2_problem().g();
    std::set<Integer> seen;
    const auto terms = enumerate_terms(g, g.start(), 7);
    for (const auto& t : terms) seen.insert(encode_number(*t, g).to_integer());
    // trailing zero codes make some numbers coincide; consumed counts differ
    std::set<std::pair<Integer, std::size_t>> keyed;
    for (const auto& t : terms) {
        const ChoiceString b = encode_number(*t, g);
        keyed.emplace(b.to_integer(), b.size());
    }
    CHECK(keyed.size() == terms.size());
}

TEST_CASE("padding beyond the consumed prefix is ignored") {
    const Rtg& g = g2_problem().g();
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const ChoiceString raw = random_bits(rng, 1 + rng() % 24);
        const Decoded d = decode(raw, g, g.start());
        std::vector<bool> read(d.consumed);
        for (std::size_t j = 0; j < d.consumed; ++j) read[j] = raw[j];
        const ChoiceString minimal(read);
        const ChoiceString padded = minimal.padded(random_bits(rng, rng() % 16));
        const Decoded e = decode(padded, g, g.start());
        CHECK(equal(*e.term, *d.term));
        CHECK(e.consumed == d.consumed);
    }
}

TEST_CASE("enumeration counts in G2") {
    const Rtg& g = g2_problem().g();
    const auto terms = enumerate_terms(g, g.start(), 9);
    std::map<std::size_t, std::size_t> by_size;
    for (const auto& t : terms) ++by_size[t->size()];
    for (std::size_t k = 0; k <= 4; ++k) {
        std::size_t expect = catalan(k);
        for (std::size_t i = 0; i <= k; ++i) expect *= 4;
        CHECK(by_size[2 * k + 1] == expect);
        CHECK(by_size[2 * k + 2] == 0);
    }
    for (std::size_t i = 1; i < terms.size(); ++i) CHECK(terms[i - 1]->size() <= terms[i]->size());
    std::size_t streamed = 0;
    for_each_term(g, g.start(), 9, [&](const TermPtr&) { return ++streamed < 10; });
    CHECK(streamed == 10);
}

TEST_CASE("decode budget") {
    const Rtg& g = g2_problem().g();
    // every bit set chooses Plus again
    const ChoiceString ones(std::vector<bool>(64, true));
    CHECK_THROWS_AS(decode(ones, g, g.start(), 16), DecodeBudgetExceeded);
    CHECK_NOTHROW(decode(ones, g, g.start()));
}

TEST_CASE("grammar validation") {
    const std::vector<Nonterminal> nts = {{"S", ScalarType::Int}, {"B", ScalarType::Bool}};
    const std::vector<Parameter> params = {{"x", ScalarType::Int}};
    const auto x = symbols::variable("x", 0, ScalarType::Int);
    CHECK_NOTHROW(Rtg(nts, params, "S", {{"S", x, {}}, {"B", symbols::op(">"), {"S", "S"}}}));
    CHECK_THROWS_AS(Rtg(nts, params, "S", {{"S", x, {}}, {"B", symbols::op(">"), {"S", "Q"}}}), GrammarError);
    CHECK_THROWS_AS(Rtg(nts, params, "S", {{"S", x, {}}, {"S", symbols::op("+"), {"S", "B"}}}), GrammarError);
    CHECK_THROWS_AS(Rtg(nts, params, "S", {{"S", symbols::op("+"), {"S"}}}), GrammarError);
    CHECK(symbols::op("*") == nullptr);
}
