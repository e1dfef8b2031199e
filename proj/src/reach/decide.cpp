// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <condition_variable>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "unreal/reach.hpp"

namespace unreal {

namespace {

// Mailbox the two engines post their verdicts to.
class Channel {
  public:
    void post(ReachVerdict v) {
        {
            std::lock_guard lock(mu_);
            messages_.push_back(std::move(v));
        }
        cv_.notify_all();
    }

    // Blocks until a definitive verdict or `expected` messages arrived.
    std::vector<ReachVerdict> wait(std::size_t expected) {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] {
            if (messages_.size() >= expected) return true;
            for (const auto& m : messages_) {
                if (m.kind != ReachVerdict::Kind::Unknown) return true;
            }
            return false;
        });
        return messages_;
    }

    std::vector<ReachVerdict> drain() {
        std::lock_guard lock(mu_);
        return messages_;
    }

  private:
    std::mutex mu_;
    std::condition_variable cv_;
    std::vector<ReachVerdict> messages_;
};

template <class Engine>
void run_engine(Channel& channel, const char* name, Engine&& engine) {
    try {
        channel.post(engine());
    } catch (const std::exception& e) {
        ReachVerdict v;
        v.engine = name;
        v.reason = std::string("error: ") + e.what();
        channel.post(std::move(v));
    }
}

} // namespace

ReachVerdict decide(const ReachabilityProblem& rp, const DecideBudgets& budgets, std::stop_token stop) {
    Channel channel;
    std::vector<ReachVerdict> messages;
    {
        std::jthread search([&](std::stop_token st) {
            run_engine(channel, "search", [&] { return bounded_search(rp, budgets.search, st); });
        });
        std::jthread prover([&](std::stop_token st) {
            run_engine(channel, "abstract", [&] { return abstract_prove(rp, budgets.abstract, st); });
        });
        std::stop_callback forward(stop, [&] {
            search.request_stop();
            prover.request_stop();
        });
        messages = channel.wait(2);
        search.request_stop();
        prover.request_stop();
    }
    const auto all = channel.drain();
    const ReachVerdict* winner = nullptr;
    for (const auto& m : messages) {
        if (m.kind != ReachVerdict::Kind::Unknown) {
            winner = &m;
            break;
        }
    }
    for (const auto& m : all) {
        if (winner && m.kind != ReachVerdict::Kind::Unknown && m.kind != winner->kind) {
            throw std::logic_error("search and abstract engines disagree");
        }
    }
    if (winner) return *winner;
    ReachVerdict merged;
    merged.engine = "decide";
    for (const auto& m : all) {
        if (!merged.reason.empty()) merged.reason += "; ";
        merged.reason += m.engine + ": " + m.reason;
    }
    return merged;
}

} // namespace unreal
