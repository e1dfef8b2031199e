// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <condition_variable>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "unreal/cegis.hpp"

namespace unreal {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Least box point (inputs ordered lexicographically) not yet an example.
std::optional<ValueVector> next_box_point(const Problem& problem, const ExampleSet& examples, const BoundedBox& box) {
    if (!problem.spec.single_call_form) return std::nullopt;
    const auto& vars = problem.input_vars;
    std::vector<Value> cur;
    for (const auto& v : vars) cur.push_back(v.type == ScalarType::Int ? Value::of_int(box.lo) : Value::of_bool(false));
    for (;;) {
        if (!examples.contains(cur)) return cur;
        std::size_t a = vars.size();
        for (;;) {
            if (a == 0) return std::nullopt;
            --a;
            if (vars[a].type == ScalarType::Bool) {
                if (!cur[a].as_bool()) {
                    cur[a] = Value::of_bool(true);
                    break;
                }
                cur[a] = Value::of_bool(false);
            } else {
                if (cur[a].as_int() < box.hi) {
                    cur[a] = Value::of_int(cur[a].as_int() + 1);
                    break;
                }
                cur[a] = Value::of_int(box.lo);
            }
        }
    }
}

TermPtr smallest_term(const Rtg& g) {
    TermPtr found;
    for (std::size_t size = 1; !found && size <= 64; ++size) {
        for_each_term(g, g.start(), size, [&](const TermPtr& t) {
            found = t;
            return false;
        });
    }
    if (!found) throw std::invalid_argument("the grammar derives no term");
    return found;
}

} // namespace

std::string_view to_string(CegisVerdict::Kind kind) {
    switch (kind) {
    case CegisVerdict::Kind::Unrealizable:
        return "unrealizable";
    case CegisVerdict::Kind::Realizable:
        return "realizable";
    case CegisVerdict::Kind::Unknown:
        return "unknown";
    }
    return "unknown";
}

CegisVerdict cegis_loop(const Problem& problem, const CegisOptions& options, const ExampleSet& seeds,
                        std::stop_token stop) {
    if (options.max_rounds == 0) throw std::invalid_argument("max_rounds must be at least 1");
    std::stop_source cancel;
    std::stop_callback forward(stop, [&] { cancel.request_stop(); });
    std::optional<std::jthread> watchdog;
    if (options.time_budget) {
        const auto deadline = Clock::now() + *options.time_budget;
        watchdog.emplace([&cancel, deadline](std::stop_token st) {
            std::mutex m;
            std::condition_variable_any cv;
            std::unique_lock lock(m);
            cv.wait_until(lock, st, deadline, [] { return false; });
            if (!st.stop_requested()) cancel.request_stop();
        });
    }

    CegisVerdict out;
    ExampleSet examples = seeds;
    auto finish = [&](CegisVerdict::Kind kind, std::string reason) {
        out.kind = kind;
        out.reason = std::move(reason);
        out.examples = examples.items();
        return out;
    };

    for (std::size_t round = 1; round <= options.max_rounds; ++round) {
        if (cancel.stop_requested()) return finish(CegisVerdict::Kind::Unknown, "time budget exhausted");
        out.rounds = round;
        RoundRecord rec;
        rec.round = round;
        rec.examples = examples.size();
        TermPtr candidate;
        const auto t0 = Clock::now();
        if (examples.empty()) {
            candidate = smallest_term(problem.g());
            rec.verdict = "sat-witness";
            rec.engine = "smallest-term";
        } else {
            const ReachabilityProblem rp = build_program(problem, examples.items());
            ReachVerdict v = decide(rp, options.budgets, cancel.get_token());
            rec.verdict = std::string(to_string(v.kind));
            rec.engine = v.engine;
            rec.decide_ms = ms_since(t0);
            if (v.kind == ReachVerdict::Kind::ProvedUnsat) {
                // Unrealizable on E implies unrealizable.
                if (!v.certificate) throw std::logic_error("proved-unsat verdict without certificate");
                out.trace.push_back(rec);
                out.certificate = std::move(v.certificate);
                return finish(CegisVerdict::Kind::Unrealizable, v.reason);
            }
            if (v.kind == ReachVerdict::Kind::Unknown) {
                const auto* box = std::get_if<BoundedBox>(&options.verifier.mode);
                std::optional<ValueVector> extra;
                if (options.augment_on_unknown && box && !cancel.stop_requested()) {
                    extra = next_box_point(problem, examples, *box);
                }
                if (!extra) {
                    out.trace.push_back(rec);
                    return finish(CegisVerdict::Kind::Unknown, v.reason);
                }
                rec.counterexample = *extra;
                out.trace.push_back(rec);
                examples.add(std::move(*extra));
                continue;
            }
            candidate = v.witness->term;
        }
        rec.candidate = to_string(*candidate);
        const auto t1 = Clock::now();
        const VerifyResult vr = verify_candidate(*candidate, problem, options.verifier);
        rec.verify_ms = ms_since(t1);
        if (vr.kind == VerifyResult::Kind::Error) {
            out.trace.push_back(rec);
            return finish(CegisVerdict::Kind::Unknown, "verifier: " + vr.error);
        }
        if (vr.kind == VerifyResult::Kind::Pass) {
            out.trace.push_back(rec);
            out.term = candidate;
            out.verified = !vr.bounded;
            return finish(CegisVerdict::Kind::Realizable, vr.bounded ? "verified on the bounded box" : "verified");
        }
        if (examples.contains(vr.example)) throw std::logic_error("verifier returned a known example");
        const ValueVector outputs = [&] {
            ValueVector o;
            for (std::size_t j = 0; j < problem.spec.slot_count(); ++j) {
                o.push_back(eval(*candidate, problem.spec.call_arguments(vr.example, j)));
            }
            return o;
        }();
        if (eval_spec(problem.spec, vr.example, outputs)) {
            throw std::logic_error("counterexample does not falsify the candidate");
        }
        rec.counterexample = vr.example;
        out.trace.push_back(rec);
        examples.add(vr.example);
    }
    return finish(CegisVerdict::Kind::Unknown, "round limit of " + std::to_string(options.max_rounds) + " reached");
}

} // namespace unreal
