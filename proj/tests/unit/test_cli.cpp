// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "unreal/cli.hpp"

using namespace unreal;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string bench(const std::string& stem) { return testing::source_dir() + "/benchmarks/" + stem + ".sl"; }

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("unreal-cli-" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    [[nodiscard]] std::string str() const { return path.string(); }
};

void copy_benchmark(const std::string& stem, const fs::path& dir, bool sidecar) {
    const fs::path src = testing::source_dir() + "/benchmarks/";
    fs::copy_file(src / (stem + ".sl"), dir / (stem + ".sl"));
    if (sidecar) fs::copy_file(src / (stem + ".expect"), dir / (stem + ".expect"));
}

} // namespace

TEST_CASE("prove exit codes follow the verdict") {
    CHECK(run({"prove", bench("max2_limited_if")}).code == 0);
    CHECK(run({"prove", bench("max2_full")}).code == 1);
    CHECK(run({"prove", bench("sy_eq"), "--max-rounds", "3"}).code == 2);
    CHECK(run({"prove", "/nonexistent.sl"}).code == 3);
    CHECK(run({"prove"}).code == 3);
    CHECK(run({"prove", bench("max2_full"), "--backend", "nope"}).code == 3);
    CHECK(run({"prove", bench("max2_full"), "--box", "3,1"}).code == 3);
    CHECK(run({"prove", bench("max2_full"), "--seed-examples", "(1)"}).code == 3);
    CHECK(run({"frobnicate"}).code == 3);
    CHECK(run({"--version"}).out.find(cli::tool_version) != std::string::npos);
    CHECK(cli::exit_code_for("realizable-bounded") == 1);
    CHECK(cli::exit_code_for("weird") == 3);
}

TEST_CASE("frontend errors name the file and position") {
    TempDir d;
    const auto path = d.path / "bad.sl";
    std::ofstream(path) << "(set-logic LIA)\n(synth-fun f ((x Int)) Int ((Start Int (x z))))\n";
    const Run r = run({"prove", path.string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("bad.sl: type error at 2:") != std::string::npos);
}

TEST_CASE("JSON report contents") {
    const Run r = run({"prove", bench("max2_limited_if"), "--seed", "0"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["tool"] == "unreal");
    CHECK(j["verdict"] == "unrealizable");
    CHECK(j["problem"] == "max2_limited_if");
    CHECK(j["input_sha256"] == cli::sha256_file(bench("max2_limited_if")));
    CHECK(j["input_sha256"].get<std::string>().size() == 64);
    CHECK(j["witness"].is_null());
    CHECK(j["certificate"]["text"].get<std::string>().rfind("unrealizability certificate", 0) == 0);
    CHECK(j["timings_ms"]["total"] == 0.0);
    CHECK(j["examples"].size() == j["trace"].back()["examples"].get<std::size_t>());
    const Run w = run({"prove", bench("max2_full")});
    const auto k = nlohmann::json::parse(w.out);
    CHECK(k["verdict"] == "realizable-bounded");
    CHECK(k["witness"]["term"].is_string());
    CHECK(k["witness"]["choice_string"].is_string());
}

TEST_CASE("seeded reports are byte-reproducible") {
    const Run a = run({"prove", bench("max2_full"), "--seed", "0", "--seed-examples", "random"});
    const Run b = run({"prove", bench("max2_full"), "--seed", "0", "--seed-examples", "random"});
    CHECK(a.out == b.out);
    CHECK(a.code == 1);
}

TEST_CASE("sha256 of a known file") {
    TempDir d;
    std::ofstream(d.path / "abc") << "abc";
    CHECK(cli::sha256_file((d.path / "abc").string()) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("tuple parsing") {
    const auto t = cli::parse_tuples("(0,1), (-2, true) ()");
    REQUIRE(t.size() == 3);
    CHECK(t[0] == testing::ints({0, 1}));
    CHECK(t[1][1] == Value::of_bool(true));
    CHECK(t[2].empty());
    CHECK_THROWS(cli::parse_tuples("(0,x)"));
    CHECK_THROWS(cli::parse_tuples("(0,1"));
}

TEST_CASE("emit writes the named encodings") {
    TempDir d;
    const Run c = run({"emit", bench("max2_limited_if"), "--examples", "(0,1)", "--out", d.str()});
    CHECK(c.code == 0);
    CHECK(fs::exists(d.path / "max2_limited_if.1ex.c"));
    CHECK(testing::read_file((d.path / "max2_limited_if.1ex.c").string()) ==
          testing::read_file(testing::source_dir() + "/tests/golden/max2_limited_if.1ex.c"));
    const Run h = run({"emit", bench("max2_limited_if"), "--backend", "chc", "--examples", "(0,0),(0,1),(1,0),(1,1)",
                       "--out", d.str()});
    CHECK(h.code == 0);
    CHECK(check_chc(testing::read_file((d.path / "max2_limited_if.4ex.smt2").string())).ok);
    CHECK(run({"emit", bench("max2_limited_if"), "--out", d.str()}).code == 3);
    CHECK(run({"emit", bench("max2_limited_if"), "--examples", "(1)", "--out", d.str()}).code == 3);
}

TEST_CASE("prove with an emitting backend and a certificate file") {
    TempDir d;
    const auto cert = d.path / "cert.txt";
    const Run r = run({"prove", bench("max2_limited_if"), "--backend", "chc-emit", "--out", d.str(), "--cert-out",
                       cert.string(), "--pretty"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict:  unrealizable") != std::string::npos);
    CHECK(r.out.find("certificate written to") != std::string::npos);
    CHECK(testing::read_file(cert.string()).rfind("unrealizability certificate", 0) == 0);
    bool found = false;
    for (const auto& e : fs::directory_iterator(d.path)) {
        if (e.path().extension() == ".smt2") {
            found = true;
            CHECK(check_chc(testing::read_file(e.path().string())).ok);
        }
    }
    CHECK(found);
}

TEST_CASE("bench over the shipped corpus") {
    const Run r = run({"bench", testing::source_dir() + "/benchmarks"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("problem,verdict,examples,rounds,total_ms\n", 0) == 0);
    CHECK(r.out.find("max2_limited_if,unrealizable,") != std::string::npos);
    CHECK(r.out.find("max2_full,realizable-bounded,") != std::string::npos);
    CHECK(r.err.empty());
}

TEST_CASE("bench edge cases") {
    SUBCASE("empty directory") {
        TempDir d;
        const Run r = run({"bench", d.str()});
        CHECK(r.code == 0);
        CHECK(r.out == "problem,verdict,examples,rounds,total_ms\n");
    }
    SUBCASE("missing sidecar is skipped") {
        TempDir d;
        copy_benchmark("zero_const", d.path, false);
        const Run r = run({"bench", d.str()});
        CHECK(r.code == 0);
        CHECK(r.err.find("warning: zero_const.sl has no .expect sidecar") != std::string::npos);
    }
    SUBCASE("deviation fails") {
        TempDir d;
        copy_benchmark("max2_full", d.path, false);
        std::ofstream(d.path / "max2_full.expect") << "verdict: unrealizable\n";
        const Run r = run({"bench", d.str()});
        CHECK(r.code == 1);
        CHECK(r.err.find("deviation: max2_full expected unrealizable") != std::string::npos);
    }
    SUBCASE("example limit") {
        TempDir d;
        copy_benchmark("max2_limited_if", d.path, false);
        std::ofstream(d.path / "max2_limited_if.expect") << "verdict: unrealizable\nmax_examples: 1\n";
        CHECK(run({"bench", d.str()}).code == 1);
    }
    SUBCASE("not a directory") { CHECK(run({"bench", "/nonexistent"}).code == 3); }
}
