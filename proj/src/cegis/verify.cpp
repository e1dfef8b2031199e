// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "unreal/cegis.hpp"
#include "unreal/kernels.hpp"

namespace unreal {

namespace {

constexpr std::size_t max_box_points = 100'000'000;

Value apply_term(const Term& term, std::span<const Value> args) { return eval(term, args); }

bool holds(const Problem& problem, const Term& term, std::span<const Value> inputs) {
    return eval_expr(*problem.constraint, inputs, [&](std::span<const Value> args) { return apply_term(term, args); })
        .as_bool();
}

std::string smt_sort(ScalarType t) { return t == ScalarType::Int ? "Int" : "Bool"; }

struct ProcessResult {
    bool ok = false;
    std::string output;
    std::string error;
};

ProcessResult run_with_stdin(const std::string& command, const std::string& input, std::chrono::milliseconds timeout) {
    ProcessResult res;
    char path[] = "/tmp/unreal-query-XXXXXX";
    const int fd = mkstemp(path);
    if (fd < 0) {
        res.error = "cannot create temporary query file";
        return res;
    }
    {
        const char* data = input.data();
        std::size_t left = input.size();
        while (left > 0) {
            const ssize_t w = ::write(fd, data, left);
            if (w <= 0) break;
            data += w;
            left -= static_cast<std::size_t>(w);
        }
        ::lseek(fd, 0, SEEK_SET);
    }
    int out[2];
    if (pipe(out) != 0) {
        ::close(fd);
        std::filesystem::remove(path);
        res.error = "pipe failed";
        return res;
    }
    const pid_t pid = fork();
    if (pid == 0) {
        setpgid(0, 0);
        dup2(fd, 0);
        dup2(out[1], 1);
        ::close(out[0]);
        ::close(out[1]);
        ::close(fd);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    ::close(out[1]);
    ::close(fd);
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    bool timed_out = false;
    char buf[4096];
    for (;;) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            timed_out = true;
            break;
        }
        pollfd p{out[0], POLLIN, 0};
        const int r = poll(&p, 1, static_cast<int>(left.count()));
        if (r < 0 && errno == EINTR) continue;
        if (r <= 0) {
            timed_out = r == 0;
            break;
        }
        const ssize_t n = ::read(out[0], buf, sizeof buf);
        if (n <= 0) break;
        res.output.append(buf, static_cast<std::size_t>(n));
    }
    ::close(out[0]);
    if (pid > 0) setpgid(pid, pid);
    if (timed_out && pid > 0) kill(-pid, SIGKILL);
    int status = 0;
    if (pid > 0) waitpid(pid, &status, 0);
    std::filesystem::remove(path);
    if (pid < 0) {
        res.error = "fork failed";
    } else if (timed_out) {
        res.error = "solver timed out";
    } else {
        res.ok = true;
    }
    return res;
}

Value parse_model_value(const SExpr& e, ScalarType type) {
    if (type == ScalarType::Bool) {
        if (e.is_atom("true")) return Value::of_bool(true);
        if (e.is_atom("false")) return Value::of_bool(false);
    } else if (e.is_atom() && is_numeral(e.text())) {
        return Value::of_int(Integer(e.text()));
    } else if (e.is_list() && e.size() == 2 && e[0].is_atom("-") && e[1].is_atom() && is_numeral(e[1].text())) {
        return Value::of_int(Integer(-Integer(e[1].text())));
    }
    throw std::runtime_error("unexpected model value " + e.to_string());
}

VerifyResult counterexample(const Problem& problem, const Term& term, ValueVector inputs) {
    VerifyResult r;
    r.kind = VerifyResult::Kind::Counterexample;
    r.example = complete_example(problem, term, inputs);
    r.inputs = std::move(inputs);
    return r;
}

VerifyResult verify_box(const Term& term, const Problem& problem, const BoundedBox& box, bool parallel) {
    VerifyResult r;
    if (box.lo > box.hi) {
        r.error = "empty verification box";
        return r;
    }
    const auto& vars = problem.input_vars;
    std::vector<std::vector<Value>> ranges;
    bool bounded = false;
    std::size_t count = 1;
    for (const auto& v : vars) {
        std::vector<Value> values;
        if (v.type == ScalarType::Bool) {
            values = {Value::of_bool(false), Value::of_bool(true)};
        } else {
            bounded = true;
            if (Integer(box.hi - box.lo) >= max_box_points) {
                r.error = "verification box too large";
                return r;
            }
            for (Integer x = box.lo; x <= box.hi; ++x) values.push_back(Value::of_int(x));
        }
        if (count > max_box_points / values.size()) {
            r.error = "verification box too large";
            return r;
        }
        count *= values.size();
        ranges.push_back(std::move(values));
    }
    auto point = [&](std::size_t i) {
        ValueVector in(vars.size());
        for (std::size_t a = vars.size(); a-- > 0;) {
            in[a] = ranges[a][i % ranges[a].size()];
            i /= ranges[a].size();
        }
        return in;
    };
    auto fails = [&](std::size_t i) {
        const ValueVector in = point(i);
        return !holds(problem, term, in);
    };
    const auto first = parallel ? kernels::first_failing_parallel(count, fails) : kernels::first_failing_serial(count, fails);
    if (first) return counterexample(problem, term, point(*first));
    r.kind = VerifyResult::Kind::Pass;
    r.bounded = bounded;
    return r;
}

VerifyResult verify_smt(const Term& term, const Problem& problem, const ExternalSmt& smt,
                        std::chrono::milliseconds timeout) {
    VerifyResult r;
    const ProcessResult run = run_with_stdin(smt.command, verification_query(term, problem), timeout);
    if (!run.ok) {
        r.error = run.error;
        return r;
    }
    // after unsat, solvers reject the trailing get-value with an error string
    std::istringstream words(run.output);
    std::string verdict;
    words >> verdict;
    if (verdict.empty()) {
        r.error = "solver produced no answer";
        return r;
    }
    if (verdict == "unsat") {
        r.kind = VerifyResult::Kind::Pass;
        return r;
    }
    if (verdict != "sat") {
        std::string line;
        std::getline(words, line);
        r.error = "solver answered " + verdict + line;
        return r;
    }
    try {
        const auto answer = parse_sexprs(run.output.substr(run.output.find("sat") + 3));
        ValueVector inputs(problem.input_vars.size());
        if (!problem.input_vars.empty()) {
            if (answer.empty() || !answer[0].is_list()) {
                r.error = "solver returned no model";
                return r;
            }
            std::vector<bool> seen(inputs.size(), false);
            for (const auto& pair : answer[0].items()) {
                if (!pair.is_list() || pair.size() != 2 || !pair[0].is_atom()) continue;
                for (std::size_t i = 0; i < problem.input_vars.size(); ++i) {
                    if (problem.input_vars[i].name == pair[0].text()) {
                        inputs[i] = parse_model_value(pair[1], problem.input_vars[i].type);
                        seen[i] = true;
                    }
                }
            }
            for (std::size_t i = 0; i < seen.size(); ++i) {
                if (!seen[i]) {
                    r.error = "model misses variable " + problem.input_vars[i].name;
                    return r;
                }
            }
        }
        if (holds(problem, term, inputs)) {
            r.error = "solver model does not falsify the specification";
            return r;
        }
        return counterexample(problem, term, std::move(inputs));
    } catch (const std::exception& e) {
        r.error = std::string("cannot read solver output: ") + e.what();
        return r;
    }
}

} // namespace

std::string verification_query(const Term& term, const Problem& problem) {
    std::ostringstream os;
    os << "(set-logic LIA)\n";
    for (const auto& v : problem.input_vars) os << "(declare-fun " << v.name << " () " << smt_sort(v.type) << ")\n";
    os << "(define-fun " << problem.function_name << " (";
    for (std::size_t i = 0; i < problem.params.size(); ++i) {
        os << (i ? " " : "") << "(" << problem.params[i].name << " " << smt_sort(problem.params[i].type) << ")";
    }
    os << ") " << smt_sort(problem.return_type) << " " << to_string(term) << ")\n";
    os << "(assert (not " << to_sexpr(*problem.constraint, problem.input_vars, problem.function_name) << "))\n";
    os << "(check-sat)\n";
    if (!problem.input_vars.empty()) {
        os << "(get-value (";
        for (std::size_t i = 0; i < problem.input_vars.size(); ++i) os << (i ? " " : "") << problem.input_vars[i].name;
        os << "))\n";
    }
    return os.str();
}

ValueVector complete_example(const Problem& problem, const Term& term, std::span<const Value> inputs) {
    const FlatSpec& spec = problem.spec;
    ValueVector vals(spec.vars.size());
    for (std::size_t i = 0; i < spec.input_count && i < inputs.size(); ++i) vals[i] = inputs[i];
    auto call = [&](const CallSlot& c) {
        ValueVector args;
        for (auto a : c.args) args.push_back(vals[a]);
        vals[c.result] = eval(term, args);
    };
    if (spec.hypotheses.empty()) {
        for (const auto& c : spec.calls) call(c);
    } else {
        for (const auto& h : spec.hypotheses) {
            if (h.kind == Hypothesis::Kind::Call) {
                call(spec.calls[h.index]);
            } else {
                const auto& d = spec.definitions[h.index];
                vals[d.var] = eval_expr(*d.expr, vals);
            }
        }
    }
    ValueVector out;
    for (auto v : spec.example_vars()) out.push_back(vals[v]);
    return out;
}

VerifyResult verify_candidate(const Term& term, const Problem& problem, const VerifierConfig& cfg) {
    if (const auto* box = std::get_if<BoundedBox>(&cfg.mode)) return verify_box(term, problem, *box, cfg.parallel);
    return verify_smt(term, problem, std::get<ExternalSmt>(cfg.mode), cfg.timeout);
}

} // namespace unreal
