// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include <boost/dynamic_bitset.hpp>

#include "unreal/kernels.hpp"
#include "unreal/reach.hpp"

namespace unreal {

namespace {

constexpr std::size_t chunk_size = 4096;
constexpr std::size_t unify_term_candidates = 8;

struct Entry {
    ValueVector vec;
    TermPtr term;
};

// Bottom-up term bank with one representative per distinct output vector.
class Bank {
  public:
    enum class Status { Done, Found, Budget, Cancelled };

    Bank(const ProgramIr& program, std::size_t max_size, std::size_t max_vectors, std::vector<ProductionRef> disabled)
        : program_(program), g_(*program.grammar), max_vectors_(max_vectors), disabled_(std::move(disabled)) {
        const std::size_t count = g_.nonterminals().size();
        levels_.assign(count, std::vector<std::vector<Entry>>(max_size + 1));
        seen_.resize(count);
    }

    Status grow(std::size_t size, const std::stop_token& stop) {
        for (std::size_t nt = 0; nt < levels_.size(); ++nt) {
            for (const auto& p : g_.productions(nt)) {
                if (std::find(disabled_.begin(), disabled_.end(), p.ref()) != disabled_.end()) continue;
                if (p.rhs.empty()) {
                    if (size != 1) continue;
                    if (const Status s = compose(p, {}, stop); s != Status::Done) return s;
                    continue;
                }
                if (size < p.rhs.size() + 1) continue;
                std::vector<std::size_t> parts(p.rhs.size(), 1);
                if (const Status s = compositions(p, parts, 0, size - 1, stop); s != Status::Done) return s;
            }
        }
        return Status::Done;
    }

    [[nodiscard]] std::vector<const Entry*> all(std::size_t nt) const {
        std::vector<const Entry*> out;
        for (const auto& level : levels_[nt]) {
            for (const auto& e : level) out.push_back(&e);
        }
        return out;
    }

    [[nodiscard]] std::size_t total() const { return total_; }
    [[nodiscard]] const std::optional<Entry>& found() const { return found_; }

  private:
    Status compositions(const Production& p, std::vector<std::size_t>& parts, std::size_t a, std::size_t left,
                        const std::stop_token& stop) {
        const std::size_t arity = parts.size();
        if (a + 1 == arity) {
            parts[a] = left;
            return compose(p, parts, stop);
        }
        for (std::size_t take = 1; take + (arity - a - 1) <= left; ++take) {
            parts[a] = take;
            if (const Status s = compositions(p, parts, a + 1, left - take, stop); s != Status::Done) return s;
        }
        return Status::Done;
    }

    Status compose(const Production& p, const std::vector<std::size_t>& parts, const std::stop_token& stop) {
        kernels::ComposeBatch batch;
        batch.symbol = p.symbol.get();
        batch.envs = program_.envs;
        for (std::size_t a = 0; a < parts.size(); ++a) {
            const auto& level = levels_[p.rhs[a]][parts[a]];
            if (level.empty()) return Status::Done;
            std::vector<const ValueVector*> pool;
            pool.reserve(level.size());
            for (const auto& e : level) pool.push_back(&e.vec);
            batch.pools.push_back(std::move(pool));
        }
        const std::size_t size = 1 + [&] {
            std::size_t s = 0;
            for (auto x : parts) s += x;
            return s;
        }();
        const std::size_t total = batch.product_size();
        std::vector<ValueVector> out;
        for (std::size_t begin = 0; begin < total; begin += chunk_size) {
            if (stop.stop_requested()) return Status::Cancelled;
            const std::size_t end = std::min(total, begin + chunk_size);
            kernels::compose_parallel(batch, begin, end, out);
            for (std::size_t i = begin; i < end; ++i) {
                ValueVector& vec = out[i - begin];
                if (seen_[p.lhs].count(vec)) continue;
                if (total_ >= max_vectors_) return Status::Budget;
                std::vector<TermPtr> children;
                const auto idx = batch.unrank(i);
                for (std::size_t a = 0; a < idx.size(); ++a) children.push_back(levels_[p.rhs[a]][parts[a]][idx[a]].term);
                TermPtr term = make_term(g_, p.ref(), std::move(children));
                seen_[p.lhs].insert(vec);
                ++total_;
                auto& level = levels_[p.lhs][size];
                level.push_back({std::move(vec), std::move(term)});
                if (p.lhs == g_.start() && program_.satisfies_all(level.back().vec)) {
                    found_ = level.back();
                    return Status::Found;
                }
            }
        }
        return Status::Done;
    }

    const ProgramIr& program_;
    const Rtg& g_;
    std::size_t max_vectors_;
    std::vector<ProductionRef> disabled_;
    std::vector<std::vector<std::vector<Entry>>> levels_;
    std::vector<std::unordered_set<ValueVector, ValueVectorHash>> seen_;
    std::size_t total_ = 0;
    std::optional<Entry> found_;
};

ReachVerdict witness(const ProgramIr& program, TermPtr term) {
    ValueVector outputs = program.evaluate(*term);
    if (!program.satisfies_all(outputs)) throw std::logic_error("search produced a term violating the examples");
    ReachVerdict v;
    v.kind = ReachVerdict::Kind::SatWitness;
    v.engine = "search";
    v.witness = SatWitness{term, encode_number(*term, *program.grammar), std::move(outputs)};
    return v;
}

ReachVerdict unknown(std::string reason) {
    ReachVerdict v;
    v.kind = ReachVerdict::Kind::Unknown;
    v.engine = "search";
    v.reason = std::move(reason);
    return v;
}

using Bits = boost::dynamic_bitset<>;

// Decision-list unification: ite(c1, t1, ite(c2, t2, ... t)) built greedily
// from conditional-free terms and conditions.
TermPtr unify(const ProgramIr& program, const Bank& bank, const Production& ite) {
    const Rtg& g = *program.grammar;
    const std::size_t k = program.k;
    const auto terms = bank.all(g.start());
    const auto conds = bank.all(ite.rhs[0]);
    if (terms.empty() || conds.empty()) return nullptr;
    std::vector<Bits> correct;
    correct.reserve(terms.size());
    for (const auto* t : terms) {
        Bits b(k);
        for (std::size_t m = 0; m < k; ++m) {
            const Value out[] = {t->vec[m]};
            b[m] = eval_spec(program.spec, program.examples[m], out);
        }
        correct.push_back(std::move(b));
    }
    std::vector<Bits> truth;
    truth.reserve(conds.size());
    for (const auto* c : conds) {
        Bits b(k);
        for (std::size_t m = 0; m < k; ++m) b[m] = c->vec[m].as_bool();
        truth.push_back(std::move(b));
    }

    struct Step {
        std::size_t cond;
        std::size_t term;
        bool swapped;
    };
    std::vector<Step> chain;
    Bits remaining(k);
    remaining.set();
    std::optional<std::size_t> last;
    while (chain.size() <= k) {
        for (std::size_t t = 0; t < terms.size() && !last; ++t) {
            if (remaining.is_subset_of(correct[t])) last = t;
        }
        if (last) break;
        std::vector<std::pair<std::size_t, std::size_t>> ranked;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::size_t cover = (correct[t] & remaining).count();
            if (cover) ranked.emplace_back(cover, t);
        }
        std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        if (ranked.size() > unify_term_candidates) ranked.resize(unify_term_candidates);
        std::optional<Step> best;
        std::size_t best_cover = 0;
        Bits best_mask;
        for (const auto& [cover, t] : ranked) {
            for (std::size_t c = 0; c < conds.size(); ++c) {
                const Bits on = truth[c] & remaining;
                const Bits off = remaining - truth[c];
                if (on.any() && on.is_subset_of(correct[t]) && on.count() > best_cover) {
                    best = Step{c, t, false};
                    best_cover = on.count();
                    best_mask = on;
                }
                if (off.any() && off.is_subset_of(correct[t]) && off.count() > best_cover) {
                    best = Step{c, t, true};
                    best_cover = off.count();
                    best_mask = off;
                }
            }
            if (best) break;
        }
        if (!best) return nullptr;
        chain.push_back(*best);
        remaining -= best_mask;
    }
    if (!last) return nullptr;
    TermPtr cur = terms[*last]->term;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        TermPtr c = conds[it->cond]->term;
        TermPtr t = terms[it->term]->term;
        cur = it->swapped ? make_term(g, ite.ref(), {c, cur, t}) : make_term(g, ite.ref(), {c, t, cur});
    }
    return cur;
}

} // namespace

ReachVerdict bounded_search(const ReachabilityProblem& rp, const SearchBudget& budget, std::stop_token stop) {
    const ProgramIr& program = rp.program;
    const Rtg& g = *program.grammar;
    if (budget.max_vectors == 0 || budget.max_term_size == 0) throw std::invalid_argument("search budget must be positive");

    std::vector<ProductionRef> ite_refs;
    const Production* ite = nullptr;
    for (const auto& p : g.productions(g.start())) {
        if (p.symbol->kind == SymbolKind::IfThenElse && p.rhs[1] == g.start() && p.rhs[2] == g.start()) {
            ite_refs.push_back(p.ref());
            if (!ite) ite = &p;
        }
    }
    if (ite && program.s == 1) {
        Bank bank(program, budget.max_term_size, std::max<std::size_t>(1, budget.max_vectors / 2), ite_refs);
        for (std::size_t size = 1; size <= budget.max_term_size; ++size) {
            const auto status = bank.grow(size, stop);
            if (status == Bank::Status::Cancelled) return unknown("cancelled");
            if (status == Bank::Status::Found) return witness(program, bank.found()->term);
            if (TermPtr t = unify(program, bank, *ite)) return witness(program, t);
            if (status == Bank::Status::Budget) break;
        }
    }

    Bank bank(program, budget.max_term_size, budget.max_vectors, {});
    for (std::size_t size = 1; size <= budget.max_term_size; ++size) {
        const auto status = bank.grow(size, stop);
        if (status == Bank::Status::Cancelled) return unknown("cancelled");
        if (status == Bank::Status::Found) return witness(program, bank.found()->term);
        if (status == Bank::Status::Budget) {
            return unknown("budget: " + std::to_string(budget.max_vectors) + " distinct vectors explored");
        }
    }
    return unknown("budget: no term of at most " + std::to_string(budget.max_term_size) + " nodes satisfies the examples");
}

} // namespace unreal
