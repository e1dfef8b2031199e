// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include "unreal/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

namespace unreal::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

nlohmann::json value_json(const Value& v) {
    if (v.is_bool()) return v.as_bool();
    const Integer& i = v.as_int();
    if (i >= std::numeric_limits<std::int64_t>::min() && i <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(i);
    }
    return i.str();
}

nlohmann::json tuple_json(const ValueVector& t) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : t) a.push_back(value_json(v));
    return a;
}

double rounded(double ms) { return std::round(ms * 1000.0) / 1000.0; }

std::pair<Integer, Integer> parse_box(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            const Integer r(text);
            return {Integer(-r), r};
        }
        return {Integer(text.substr(0, comma)), Integer(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("--box expects N or LO,HI, got '" + text + "'");
    }
}

ExampleSet seeds_for(const Problem& problem, const ProveOptions& o) {
    SeedOptions s;
    const std::string& mode = o.seed_examples;
    if (mode == "zeros") {
        s.strategy = SeedStrategy::Zeros;
    } else if (mode == "empty") {
        s.strategy = SeedStrategy::Empty;
    } else if (mode == "corners") {
        s.strategy = SeedStrategy::Corners;
    } else if (mode == "random") {
        s.strategy = SeedStrategy::Random;
        s.lo = o.box_lo;
        s.hi = o.box_hi;
        s.random_seed = o.seed.value_or(0);
    } else {
        s.strategy = SeedStrategy::User;
        s.user = parse_tuples(mode);
        const std::size_t arity = problem.spec.example_arity();
        for (const auto& t : s.user) {
            if (t.size() != arity) {
                throw UsageError("seed example " + to_string(t) + " does not have " + std::to_string(arity) + " values");
            }
        }
    }
    return seed_examples_from_spec(problem, s);
}

void add_prove_flags(CLI::App& app, ProveOptions& o, std::string& box) {
    app.add_option("--backend", o.backend, "builtin, chc-emit or c-emit")
        ->check(CLI::IsMember({"builtin", "chc-emit", "c-emit"}));
    app.add_option("--max-rounds", o.max_rounds, "CEGIS round limit")->check(CLI::PositiveNumber);
    app.add_option("--budget-vectors", o.budget_vectors, "distinct vectors explored per search")->check(CLI::PositiveNumber);
    app.add_option("--term-size", o.term_size, "largest term size searched")->check(CLI::PositiveNumber);
    app.add_option("--box", box, "verifier box: N for [-N,N] or LO,HI");
    app.add_option("--timeout-ms", o.timeout_ms, "wall-clock budget for the whole run");
    app.add_option("--seed-examples", o.seed_examples, "zeros, empty, corners, random or tuples like (0,1),(1,0)");
    app.add_flag("--pretty", o.pretty, "human-readable report");
    app.add_option("--cert-out", o.cert_out, "write the unrealizability certificate here");
    app.add_option("--seed", o.seed, "seed for random examples; makes the report byte-reproducible");
    app.add_option("--verifier", o.verifier, "box or smt")->check(CLI::IsMember({"box", "smt"}));
    app.add_option("--smt-command", o.smt_command, "solver command reading SMT-LIB2 on stdin");
    app.add_option("--out", o.out_dir, "directory for emitted encodings");
}

void finish_flags(ProveOptions& o, const std::string& box) {
    if (!box.empty()) {
        auto [lo, hi] = parse_box(box);
        if (lo > hi) throw UsageError("--box range is empty");
        o.box_lo = lo;
        o.box_hi = hi;
    }
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

void parse_into(CLI::App& app, std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    app.parse(args);
}

struct Expectation {
    std::string verdict;
    std::optional<std::size_t> max_examples;
    std::optional<double> max_ms;
    std::string flags;
};

Expectation read_sidecar(const fs::path& path) {
    std::ifstream in(path);
    Expectation e;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
        };
        trim(key);
        trim(value);
        if (key == "verdict") e.verdict = value;
        if (key == "max_examples") e.max_examples = std::stoul(value);
        if (key == "max_ms") e.max_ms = std::stod(value);
        if (key == "flags") e.flags = value;
    }
    return e;
}

bool verdict_matches(const std::string& expected, const std::string& got) {
    if (expected == got) return true;
    return expected == "realizable" && got == "realizable-bounded";
}

int cmd_prove(const std::string& file, const ProveOptions& o, std::ostream& out, std::ostream& err) {
    ProveOutcome res;
    try {
        res = prove_file(file, o);
    } catch (const FrontendError& e) {
        err << file << ": " << e.what() << "\n";
        return ExitError;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return ExitError;
    } catch (const std::exception& e) {
        err << file << ": error: " << e.what() << "\n";
        return ExitError;
    }
    if (o.pretty) {
        out << to_pretty(res.report);
    } else {
        out << to_json(res.report, o.seed.has_value()).dump(2) << "\n";
    }
    return res.exit_code;
}

int cmd_emit(const std::string& file, const std::string& backend, const std::string& examples_text,
             const std::string& out_dir, bool verifier_error, std::ostream& out, std::ostream& err) {
    try {
        const Problem problem = parse_problem_file(file);
        const auto examples = parse_tuples(examples_text);
        if (examples.empty()) {
            err << "usage error: emit needs at least one example (--examples)\n";
            return ExitError;
        }
        const std::size_t arity = problem.spec.example_arity();
        for (const auto& t : examples) {
            if (t.size() != arity) {
                err << "usage error: example " << to_string(t) << " does not have " << arity << " values\n";
                return ExitError;
            }
        }
        const ReachabilityProblem rp = build_program(problem, examples);
        const bool c = backend == "c";
        const std::string text = c ? emit_c(rp, EmitOptions{verifier_error}) : emit_chc(rp);
        fs::create_directories(out_dir);
        const fs::path path = fs::path(out_dir) / emission_filename(problem.name, examples.size(), c ? "c" : "smt2");
        std::ofstream os(path);
        os << text;
        if (!os) {
            err << "error: cannot write " << path.string() << "\n";
            return ExitError;
        }
        out << path.string() << "\n";
        return 0;
    } catch (const FrontendError& e) {
        err << file << ": " << e.what() << "\n";
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return ExitError;
}

int cmd_bench(const std::string& dir, const ProveOptions& base, std::ostream& out, std::ostream& err) {
    if (!fs::is_directory(dir)) {
        err << "error: " << dir << " is not a directory\n";
        return ExitError;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".sl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    out << "problem,verdict,examples,rounds,total_ms\n";
    bool deviation = false;
    for (const auto& f : files) {
        fs::path sidecar = f;
        sidecar.replace_extension(".expect");
        if (!fs::exists(sidecar)) {
            err << "warning: " << f.filename().string() << " has no .expect sidecar; skipped\n";
            continue;
        }
        const Expectation exp = read_sidecar(sidecar);
        ProveOptions o = base;
        o.pretty = false;
        std::string box;
        try {
            CLI::App flags_app{"sidecar flags"};
            add_prove_flags(flags_app, o, box);
            parse_into(flags_app, split_ws(exp.flags));
            finish_flags(o, box);
        } catch (const std::exception& e) {
            err << "warning: bad flags in " << sidecar.filename().string() << ": " << e.what() << "; skipped\n";
            deviation = true;
            continue;
        }
        std::string verdict = "error";
        std::size_t examples = 0;
        std::size_t rounds = 0;
        double total = 0;
        try {
            const ProveOutcome res = prove_file(f.string(), o);
            verdict = res.report.verdict;
            examples = res.report.examples.size();
            rounds = res.report.rounds;
            total = res.report.total_ms;
        } catch (const std::exception& e) {
            err << f.filename().string() << ": error: " << e.what() << "\n";
        }
        out << f.stem().string() << "," << verdict << "," << examples << "," << rounds << ","
            << static_cast<long long>(std::llround(total)) << "\n";
        if (!verdict_matches(exp.verdict, verdict)) {
            err << "deviation: " << f.stem().string() << " expected " << exp.verdict << ", got " << verdict << "\n";
            deviation = true;
        }
        if (exp.max_examples && examples > *exp.max_examples) {
            err << "deviation: " << f.stem().string() << " used " << examples << " examples, limit " << *exp.max_examples << "\n";
            deviation = true;
        }
        if (exp.max_ms && total > *exp.max_ms) {
            err << "deviation: " << f.stem().string() << " took " << total << " ms, limit " << *exp.max_ms << "\n";
            deviation = true;
        }
    }
    return deviation ? 1 : 0;
}

} // namespace

std::string verdict_label(const CegisVerdict& v) {
    switch (v.kind) {
    case CegisVerdict::Kind::Unrealizable:
        return "unrealizable";
    case CegisVerdict::Kind::Realizable:
        return v.verified ? "realizable" : "realizable-bounded";
    case CegisVerdict::Kind::Unknown:
        return "unknown";
    }
    return "unknown";
}

int exit_code_for(std::string_view verdict) {
    if (verdict == "unrealizable") return ExitUnrealizable;
    if (verdict == "realizable" || verdict == "realizable-bounded") return ExitRealizable;
    if (verdict == "unknown") return ExitUnknown;
    return ExitError;
}

std::vector<ValueVector> parse_tuples(std::string_view text) {
    std::vector<ValueVector> out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto expect = [&](char c) {
        skip();
        if (i >= text.size() || text[i] != c) {
            throw UsageError("malformed example list '" + std::string(text) + "': expected '" + c + "'");
        }
        ++i;
    };
    skip();
    while (i < text.size()) {
        expect('(');
        ValueVector t;
        skip();
        if (i < text.size() && text[i] == ')') {
            ++i;
        } else {
            for (;;) {
                skip();
                const std::size_t start = i;
                while (i < text.size() && text[i] != ',' && text[i] != ')' && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
                const std::string tok(text.substr(start, i - start));
                if (tok == "true" || tok == "false") {
                    t.push_back(Value::of_bool(tok == "true"));
                } else if (is_numeral(tok)) {
                    t.push_back(Value::of_int(Integer(tok)));
                } else {
                    throw UsageError("malformed example value '" + tok + "'");
                }
                skip();
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    continue;
                }
                expect(')');
                break;
            }
        }
        out.push_back(std::move(t));
        skip();
        if (i < text.size() && text[i] == ',') ++i;
        skip();
    }
    return out;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[8192];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
        if (!in) break;
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

nlohmann::json to_json(const RunReport& r, bool deterministic) {
    auto ms = [&](double v) { return deterministic ? 0.0 : rounded(v); };
    nlohmann::json j;
    j["tool"] = tool_name;
    j["version"] = tool_version;
    j["problem"] = r.problem;
    j["input_file"] = r.input_file;
    j["input_sha256"] = r.input_sha256;
    j["verdict"] = r.verdict;
    j["reason"] = r.reason;
    j["examples"] = nlohmann::json::array();
    for (const auto& e : r.examples) j["examples"].push_back(tuple_json(e));
    j["rounds"] = r.rounds;
    if (r.witness) {
        j["witness"] = {{"term", *r.witness}, {"choice_string", r.witness_bits.value_or("")}};
    } else {
        j["witness"] = nullptr;
    }
    if (r.certificate_text) {
        j["certificate"] = {{"path", r.certificate_path ? nlohmann::json(*r.certificate_path) : nlohmann::json(nullptr)},
                            {"text", *r.certificate_text}};
    } else {
        j["certificate"] = nullptr;
    }
    j["timings_ms"] = {{"parse", ms(r.parse_ms)},   {"solve", ms(r.solve_ms)}, {"decide", ms(r.decide_ms)},
                       {"verify", ms(r.verify_ms)}, {"emit", ms(r.emit_ms)},   {"total", ms(r.total_ms)}};
    j["trace"] = nlohmann::json::array();
    for (const auto& t : r.trace) {
        nlohmann::json row;
        row["round"] = t.round;
        row["examples"] = t.examples;
        row["verdict"] = t.verdict;
        row["engine"] = t.engine;
        row["candidate"] = t.candidate.empty() ? nlohmann::json(nullptr) : nlohmann::json(t.candidate);
        row["counterexample"] = t.counterexample ? tuple_json(*t.counterexample) : nlohmann::json(nullptr);
        row["decide_ms"] = ms(t.decide_ms);
        row["verify_ms"] = ms(t.verify_ms);
        j["trace"].push_back(std::move(row));
    }
    j["emitted"] = r.emitted;
    j["config"] = r.config;
    return j;
}

std::string to_pretty(const RunReport& r) {
    std::ostringstream os;
    os << "problem:  " << r.problem << "\n";
    os << "verdict:  " << r.verdict << "\n";
    os << "reason:   " << r.reason << "\n";
    os << "rounds:   " << r.rounds << "\n";
    os << "examples: " << r.examples.size();
    for (const auto& e : r.examples) os << " " << to_string(e);
    os << "\n";
    if (r.witness) os << "witness:  " << *r.witness << "  #(e) = " << r.witness_bits.value_or("") << "\n";
    for (const auto& t : r.trace) {
        os << "  round " << t.round << ": |E| = " << t.examples << ", " << t.verdict;
        if (!t.candidate.empty()) os << ", candidate " << t.candidate;
        if (t.counterexample) os << ", new example " << to_string(*t.counterexample);
        os << "\n";
    }
    for (const auto& p : r.emitted) os << "emitted:  " << p << "\n";
    os << "time:     " << std::fixed << std::setprecision(1) << r.total_ms << " ms\n";
    if (r.certificate_text) {
        if (r.certificate_path) os << "certificate written to " << *r.certificate_path << "\n";
        os << "\n" << *r.certificate_text;
    }
    return os.str();
}

ProveOutcome prove_file(const std::string& path, const ProveOptions& o) {
    const auto t0 = Clock::now();
    RunReport report;
    report.input_file = fs::path(path).filename().string();
    report.input_sha256 = sha256_file(path);
    const Problem problem = parse_problem_file(path);
    report.problem = problem.name;
    report.parse_ms = ms_since(t0);

    CegisOptions co;
    co.max_rounds = o.max_rounds;
    co.budgets.search.max_vectors = o.budget_vectors;
    co.budgets.search.max_term_size = o.term_size;
    if (o.timeout_ms) co.time_budget = std::chrono::milliseconds(*o.timeout_ms);
    if (o.verifier == "smt") {
        co.verifier.mode = ExternalSmt{o.smt_command};
    } else {
        co.verifier.mode = BoundedBox{o.box_lo, o.box_hi};
    }
    const ExampleSet seeds = seeds_for(problem, o);

    const auto t1 = Clock::now();
    const CegisVerdict v = cegis_loop(problem, co, seeds);
    report.solve_ms = ms_since(t1);
    report.verdict = verdict_label(v);
    report.reason = v.reason;
    report.examples = v.examples;
    report.rounds = v.rounds;
    report.trace = v.trace;
    for (const auto& t : v.trace) {
        report.decide_ms += t.decide_ms;
        report.verify_ms += t.verify_ms;
    }
    if (v.term) {
        report.witness = to_string(*v.term);
        report.witness_bits = encode_number(*v.term, problem.g()).to_numeral();
    }
    if (v.certificate) {
        report.certificate_text = to_text(*v.certificate, problem.g());
        if (!o.cert_out.empty()) {
            std::ofstream os(o.cert_out);
            os << *report.certificate_text;
            if (!os) throw std::runtime_error("cannot write certificate to " + o.cert_out);
            report.certificate_path = o.cert_out;
        }
    }
    if (o.backend != "builtin" && !v.examples.empty()) {
        const auto t2 = Clock::now();
        const ReachabilityProblem rp = build_program(problem, v.examples);
        const bool c = o.backend == "c-emit";
        fs::create_directories(o.out_dir);
        const fs::path out = fs::path(o.out_dir) / emission_filename(problem.name, v.examples.size(), c ? "c" : "smt2");
        std::ofstream os(out);
        os << (c ? emit_c(rp) : emit_chc(rp));
        if (!os) throw std::runtime_error("cannot write " + out.string());
        report.emitted.push_back(out.string());
        report.emit_ms = ms_since(t2);
    }
    report.config = {{"backend", o.backend},
                     {"max_rounds", o.max_rounds},
                     {"budget_vectors", o.budget_vectors},
                     {"term_size", o.term_size},
                     {"box", {value_json(Value::of_int(o.box_lo)), value_json(Value::of_int(o.box_hi))}},
                     {"timeout_ms", o.timeout_ms ? nlohmann::json(*o.timeout_ms) : nlohmann::json(nullptr)},
                     {"seed_examples", o.seed_examples},
                     {"verifier", o.verifier},
                     {"seed", o.seed ? nlohmann::json(*o.seed) : nlohmann::json(nullptr)}};
    report.total_ms = ms_since(t0);
    return {exit_code_for(report.verdict), std::move(report)};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Unrealizability prover for SyGuS-lite problems", std::string(tool_name)};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    ProveOptions prove;
    std::string prove_file_arg, prove_box;
    auto* p = app.add_subcommand("prove", "decide realizability with counterexample-guided example growth");
    p->add_option("file", prove_file_arg, "SyGuS-lite problem")->required();
    add_prove_flags(*p, prove, prove_box);

    std::string emit_file, emit_backend = "c", emit_examples, emit_out = ".";
    bool verifier_error = false;
    auto* e = app.add_subcommand("emit", "write the example encoding for external verifiers");
    e->add_option("file", emit_file, "SyGuS-lite problem")->required();
    e->add_option("--backend", emit_backend, "c or chc")->check(CLI::IsMember({"c", "chc"}));
    e->add_option("--examples", emit_examples, "tuples like (0,0),(0,1)");
    e->add_option("--out", emit_out, "output directory");
    e->add_flag("--verifier-error", verifier_error, "report failure through __VERIFIER_error()");

    ProveOptions bench;
    std::string bench_dir, bench_box;
    auto* b = app.add_subcommand("bench", "run prove over a corpus and compare with .expect sidecars");
    b->add_option("dir", bench_dir, "corpus directory")->required();
    add_prove_flags(*b, bench, bench_box);

    try {
        parse_into(app, args);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? 0 : ExitError;
    }
    try {
        if (p->parsed()) {
            finish_flags(prove, prove_box);
            return cmd_prove(prove_file_arg, prove, out, err);
        }
        if (e->parsed()) return cmd_emit(emit_file, emit_backend, emit_examples, emit_out, verifier_error, out, err);
        finish_flags(bench, bench_box);
        return cmd_bench(bench_dir, bench, out, err);
    } catch (const UsageError& ex) {
        err << "usage error: " << ex.what() << "\n";
        return ExitError;
    }
}

} // namespace unreal::cli
