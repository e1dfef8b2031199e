// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <stdexcept>

#include "unreal/reach.hpp"

namespace unreal {

namespace {

std::vector<Integer> ints_of(std::span<const Value> v) {
    std::vector<Integer> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.as_int());
    return out;
}

std::uint64_t mask_of(std::span<const Value> v) {
    std::uint64_t m = 0;
    for (std::size_t c = 0; c < v.size() && c < 64; ++c) {
        if (v[c].as_bool()) m |= std::uint64_t{1} << c;
    }
    return m;
}

} // namespace

NtAbstraction NtAbstraction::unreached(ScalarType type, std::size_t n) {
    NtAbstraction a;
    a.type = type;
    a.affine = AffineSet::bottom(n);
    a.lattice = IntLattice::bottom(n);
    a.bools = BoolSet::empty(n);
    return a;
}

NtAbstraction NtAbstraction::of_vector(std::span<const Value> v) {
    const ScalarType type = v.empty() ? ScalarType::Int : v.front().type();
    NtAbstraction a = unreached(type, v.size());
    a.reached = true;
    if (type == ScalarType::Int) {
        const auto ints = ints_of(v);
        a.affine = AffineSet::point(ints);
        a.lattice = IntLattice::point(ints);
        for (const auto& x : ints) {
            a.intervals.push_back(Interval::point(x));
            a.congruences.push_back(Congruence::exact(x));
        }
    } else {
        a.bools = BoolSet::single(v.size(), mask_of(v));
    }
    return a;
}

std::string NtAbstraction::excluded_by(std::span<const Value> v) const {
    if (!reached) return "unreached";
    if (type == ScalarType::Bool) {
        if (v.size() > 64) return {};
        return bools.contains(mask_of(v)) ? std::string() : std::string("bool-set");
    }
    const auto ints = ints_of(v);
    if (!affine.contains(ints)) return "affine";
    for (std::size_t c = 0; c < ints.size(); ++c) {
        if (!congruences[c].contains(ints[c])) return "congruence";
    }
    for (std::size_t c = 0; c < ints.size(); ++c) {
        if (!intervals[c].contains(ints[c])) return "interval";
    }
    if (!lattice.contains(ints)) return "lattice";
    return {};
}

bool NtAbstraction::contains(std::span<const Value> v) const { return excluded_by(v).empty(); }

bool NtAbstraction::includes(const NtAbstraction& o) const {
    if (!o.reached) return true;
    if (!reached) return false;
    if (type == ScalarType::Bool) return bools.includes(o.bools);
    if (!affine.includes(o.affine) || !lattice.includes(o.lattice)) return false;
    for (std::size_t c = 0; c < intervals.size(); ++c) {
        if (!intervals[c].includes(o.intervals[c]) || !congruences[c].includes(o.congruences[c])) return false;
    }
    return true;
}

NtAbstraction NtAbstraction::join(const NtAbstraction& o) const {
    if (!o.reached) return *this;
    if (!reached) return o;
    NtAbstraction a = *this;
    if (type == ScalarType::Bool) {
        a.bools = bools.join(o.bools);
        return a;
    }
    a.affine = affine.join(o.affine);
    a.lattice = lattice.join(o.lattice);
    for (std::size_t c = 0; c < intervals.size(); ++c) {
        a.intervals[c] = intervals[c].join(o.intervals[c]);
        a.congruences[c] = congruences[c].join(o.congruences[c]);
    }
    return a;
}

bool AbstractState::includes(const AbstractState& o) const {
    if (nts.size() != o.nts.size()) return false;
    for (std::size_t i = 0; i < nts.size(); ++i) {
        if (!nts[i].includes(o.nts[i])) return false;
    }
    return true;
}

namespace {

struct Possible {
    bool can_true = true;
    bool can_false = true;
};

// Per-coordinate outcomes of an integer comparison from intervals and
// congruences of both operands.
Possible compare(SymbolKind kind, const Interval& a, const Interval& b, const Congruence& ca, const Congruence& cb) {
    // exists x in a, y in b with x < y  /  x <= y
    auto lt = [](const Interval& x, const Interval& y) { return !x.lo || !y.hi || *x.lo < *y.hi; };
    auto le = [](const Interval& x, const Interval& y) { return !x.lo || !y.hi || *x.lo <= *y.hi; };
    switch (kind) {
    case SymbolKind::LessThan:
        return {lt(a, b), le(b, a)};
    case SymbolKind::LessEqual:
        return {le(a, b), lt(b, a)};
    case SymbolKind::GreaterThan:
        return {lt(b, a), le(a, b)};
    case SymbolKind::GreaterEqual:
        return {le(b, a), lt(a, b)};
    case SymbolKind::Equals: {
        const bool overlap = !a.meet(b).empty() && ca.may_equal(cb);
        const bool same_point = a.is_point() && b.is_point() && *a.lo == *b.lo;
        return {overlap, !same_point};
    }
    default:
        return {};
    }
}

class Transfer {
  public:
    Transfer(const ProgramIr& program, const AbstractOptions& options)
        : program_(program), options_(options), n_(program.columns()) {}

    // Abstraction of one production applied to the current state; the
    // children must be reached.
    NtAbstraction apply(const Production& p, const AbstractState& st) const {
        const RankedSymbol& sym = *p.symbol;
        auto child = [&](std::size_t i) -> const NtAbstraction& { return st.nts[p.rhs[i]]; };
        switch (sym.kind) {
        case SymbolKind::IntLiteral:
        case SymbolKind::BoolLiteral:
        case SymbolKind::Variable: {
            ValueVector v;
            v.reserve(n_);
            for (std::size_t c = 0; c < n_; ++c) v.push_back(apply_symbol(sym, {}, program_.envs[c]));
            return NtAbstraction::of_vector(v);
        }
        case SymbolKind::Plus:
        case SymbolKind::Minus:
            return arith(sym.kind == SymbolKind::Plus, child(0), child(1));
        case SymbolKind::Equals:
        case SymbolKind::GreaterThan:
        case SymbolKind::GreaterEqual:
        case SymbolKind::LessThan:
        case SymbolKind::LessEqual:
            return comparison(sym.kind, child(0), child(1));
        case SymbolKind::Not: {
            NtAbstraction a = child(0);
            a.bools = a.bools.negate();
            return a;
        }
        case SymbolKind::And:
        case SymbolKind::Or: {
            NtAbstraction a = child(0);
            a.bools = sym.kind == SymbolKind::And ? a.bools.conj(child(1).bools) : a.bools.disj(child(1).bools);
            return a;
        }
        case SymbolKind::IfThenElse:
            return ite(child(0).bools, child(1), child(2));
        }
        throw std::logic_error("unhandled symbol kind");
    }

  private:
    NtAbstraction arith(bool plus, const NtAbstraction& l, const NtAbstraction& r) const {
        NtAbstraction a = l;
        a.affine = plus ? l.affine.plus(r.affine) : l.affine.minus(r.affine);
        a.lattice = plus ? l.lattice.plus(r.lattice) : l.lattice.minus(r.lattice);
        for (std::size_t c = 0; c < n_; ++c) {
            a.intervals[c] = plus ? l.intervals[c].plus(r.intervals[c]) : l.intervals[c].minus(r.intervals[c]);
            a.congruences[c] =
                plus ? l.congruences[c].plus(r.congruences[c]) : l.congruences[c].minus(r.congruences[c]);
        }
        return a;
    }

    NtAbstraction comparison(SymbolKind kind, const NtAbstraction& l, const NtAbstraction& r) const {
        NtAbstraction a = NtAbstraction::unreached(ScalarType::Bool, n_);
        a.reached = true;
        if (l.type == ScalarType::Bool) {
            // Bool equality: pointwise xnor over explicit sets.
            if (l.bools.is_top() || r.bools.is_top() ||
                l.bools.size() * r.bools.size() > BoolSet::max_pairs || n_ > 64) {
                a.bools = BoolSet::top(n_);
            } else {
                BoolSet acc = BoolSet::empty(n_);
                const std::uint64_t full = acc.full_mask();
                for (auto x : l.bools.vectors()) {
                    for (auto y : r.bools.vectors()) acc = acc.join(BoolSet::single(n_, ~(x ^ y) & full));
                }
                a.bools = acc;
            }
            return a;
        }
        if (n_ > 64) {
            a.bools = BoolSet::top(n_);
            return a;
        }
        std::vector<bool> can_true(n_), can_false(n_);
        for (std::size_t c = 0; c < n_; ++c) {
            const Possible p = compare(kind, l.intervals[c], r.intervals[c], l.congruences[c], r.congruences[c]);
            can_true[c] = p.can_true;
            can_false[c] = p.can_false;
        }
        a.bools = BoolSet::product(can_true, can_false);
        return a;
    }

    NtAbstraction ite(const BoolSet& cond, const NtAbstraction& l, const NtAbstraction& r) const {
        NtAbstraction a = l;
        if (l.type == ScalarType::Bool) {
            if (cond.is_top() || l.bools.is_top() || r.bools.is_top() ||
                cond.size() * l.bools.size() * r.bools.size() > BoolSet::max_pairs) {
                a.bools = BoolSet::top(n_);
                return a;
            }
            BoolSet acc = BoolSet::empty(n_);
            for (auto b : cond.vectors()) {
                for (auto x : l.bools.vectors()) {
                    for (auto y : r.bools.vectors()) acc = acc.join(BoolSet::single(n_, (b & x) | (~b & y)));
                }
            }
            a.bools = acc;
            return a;
        }
        const bool explicit_mix = !cond.is_top() && cond.size() <= options_.ite_mix_limit && n_ <= 64;
        if (explicit_mix) {
            a.affine = AffineSet::bottom(n_);
            a.lattice = IntLattice::bottom(n_);
            for (auto b : cond.vectors()) {
                a.affine = a.affine.join(AffineSet::mix(b, l.affine, r.affine));
                a.lattice = a.lattice.join(IntLattice::mix(b, l.lattice, r.lattice));
            }
        } else {
            a.affine = AffineSet::top(n_);
            a.lattice = IntLattice::top(n_);
        }
        for (std::size_t c = 0; c < n_; ++c) {
            const bool t = c >= 64 || cond.may_be(c, true);
            const bool f = c >= 64 || cond.may_be(c, false);
            if (t && f) {
                a.intervals[c] = l.intervals[c].join(r.intervals[c]);
                a.congruences[c] = l.congruences[c].join(r.congruences[c]);
            } else if (f) {
                a.intervals[c] = r.intervals[c];
                a.congruences[c] = r.congruences[c];
            }
        }
        return a;
    }

    const ProgramIr& program_;
    const AbstractOptions& options_;
    std::size_t n_;
};

} // namespace

FixpointResult compute_fixpoint(const ProgramIr& program, const AbstractOptions& options, std::stop_token stop) {
    const Rtg& g = *program.grammar;
    const std::size_t n = program.columns();
    const std::size_t count = g.nonterminals().size();
    FixpointResult result;
    for (std::size_t i = 0; i < count; ++i) {
        result.state.nts.push_back(NtAbstraction::unreached(g.nonterminal(i).type, n));
    }
    if (options.record_history) result.history.push_back(result.state);
    std::vector<std::size_t> growth(count, 0);
    const Transfer transfer(program, options);
    while (result.iterations < options.max_iterations) {
        if (stop.stop_requested()) {
            result.cancelled = true;
            return result;
        }
        ++result.iterations;
        bool changed = false;
        for (std::size_t nt = 0; nt < count; ++nt) {
            NtAbstraction acc = NtAbstraction::unreached(g.nonterminal(nt).type, n);
            for (const auto& p : g.productions(nt)) {
                const bool ready = std::all_of(p.rhs.begin(), p.rhs.end(),
                                               [&](std::size_t c) { return result.state.nts[c].reached; });
                if (ready) acc = acc.join(transfer.apply(p, result.state));
            }
            const NtAbstraction& old = result.state.nts[nt];
            NtAbstraction next = old.join(acc);
            if (old.reached && next.intervals != old.intervals) {
                if (growth[nt] >= options.widening_delay) {
                    for (std::size_t c = 0; c < n; ++c) next.intervals[c] = old.intervals[c].widen(next.intervals[c]);
                }
                ++growth[nt];
            }
            if (!(next == old)) {
                result.state.nts[nt] = std::move(next);
                changed = true;
            }
        }
        if (options.record_history) result.history.push_back(result.state);
        if (!changed) {
            result.converged = true;
            return result;
        }
    }
    return result;
}

} // namespace unreal
