// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <cstdio>
#include <iostream>

#include <omp.h>

#include "unreal/cegis.hpp"
#include "unreal/kernels.hpp"

using namespace unreal;

namespace {

template <class F>
double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const char* kernel, std::size_t n, double serial, double parallel) {
    std::printf("%-10s %10zu %12.2f %12.2f %8.2fx\n", kernel, n, serial, parallel, serial / parallel);
}

} // namespace

int main(int argc, char** argv) {
    const std::string corpus = argc > 1 ? argv[1] : UNREAL_SOURCE_DIR "/benchmarks";
    const Problem g2 = parse_problem_file(corpus + "/max2_limited_if.sl");
    std::vector<ValueVector> examples;
    for (int x = -2; x <= 1; ++x) {
        for (int y = -2; y <= 1; ++y) examples.push_back({Value::of_int(x), Value::of_int(y)});
    }
    const auto rp = build_program(g2, examples);
    std::vector<ValueVector> pool;
    for (const auto& t : enumerate_terms(g2.g(), 0, 7)) pool.push_back(rp.program.evaluate(*t));

    kernels::ComposeBatch batch;
    batch.symbol = g2.g().productions(0)[0].symbol.get();
    batch.envs = rp.program.envs;
    batch.pools.resize(2);
    for (const auto& v : pool) {
        batch.pools[0].push_back(&v);
        batch.pools[1].push_back(&v);
    }
    const std::size_t n = batch.product_size();
    std::vector<ValueVector> a, b;
    const double cs = time_ms([&] { kernels::compose_serial(batch, 0, n, a); });
    const double cp = time_ms([&] { kernels::compose_parallel(batch, 0, n, b); });
    if (a != b) {
        std::cerr << "compose results differ\n";
        return 1;
    }

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-10s %10s %12s %12s %9s\n", "kernel", "elements", "serial_ms", "parallel_ms", "speedup");
    report("compose", n, cs, cp);

    const Problem g1 = parse_problem_file(corpus + "/max2_full.sl");
    const auto b_nt = *g1.g().find_nonterminal("BExpr");
    const TermPtr x = make_term(g1.g(), 0, "x"), y = make_term(g1.g(), 0, "y");
    const TermPtr max = make_term(g1.g(), 0, "ite", {make_term(g1.g(), b_nt, ">", {y, x}), y, x});
    VerifierConfig cfg;
    cfg.mode = BoundedBox{-600, 600};
    cfg.parallel = false;
    const double vs = time_ms([&] { (void)verify_candidate(*max, g1, cfg); });
    cfg.parallel = true;
    const double vp = time_ms([&] { (void)verify_candidate(*max, g1, cfg); });
    report("box-scan", std::size_t{1201} * 1201, vs, vp);
    return 0;
}
