// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <set>
#include <sstream>

#include "unreal/reach.hpp"

namespace unreal {

namespace {

// Values a result variable may take when a formula holds: members of `set`
// (if present) that lie within `bounds`.
struct Allowed {
    std::optional<std::set<Integer>> set;
    Interval bounds;

    static Allowed any() { return {}; }
    static Allowed none() { return {std::set<Integer>{}, {}}; }

    [[nodiscard]] bool is_none() const { return (set && filtered().empty()) || bounds.empty(); }
    [[nodiscard]] std::set<Integer> filtered() const {
        std::set<Integer> out;
        for (const auto& v : *set) {
            if (bounds.contains(v)) out.insert(v);
        }
        return out;
    }
    [[nodiscard]] Interval hull() const {
        if (!set) return bounds;
        const auto f = filtered();
        if (f.empty()) return {Integer(1), Integer(0)};
        return {*f.begin(), *f.rbegin()};
    }
};

Allowed intersect(const Allowed& a, const Allowed& b) {
    Allowed out;
    out.bounds = a.bounds.meet(b.bounds);
    if (a.set && b.set) {
        out.set.emplace();
        for (const auto& v : *a.set) {
            if (b.set->count(v)) out.set->insert(v);
        }
    } else if (a.set) {
        out.set = a.set;
    } else if (b.set) {
        out.set = b.set;
    }
    return out;
}

Allowed unite(const Allowed& a, const Allowed& b) {
    if (a.is_none()) return b;
    if (b.is_none()) return a;
    Allowed out;
    if (a.set && b.set) {
        out.set = a.filtered();
        out.set->merge(b.filtered());
        return out;
    }
    out.bounds = a.hull().join(b.hull());
    return out;
}

class SlotAnalysis {
  public:
    SlotAnalysis(const FlatSpec& spec, const ValueVector& binding, std::size_t result)
        : binding_(binding), result_(result) {
        for (const auto& c : spec.calls) results_.insert(c.result);
    }

    Allowed run(const Expr& e, bool pol) const {
        if (!mentions_result(e)) {
            const bool v = eval_expr(e, binding_).as_bool();
            return v == pol ? Allowed::any() : Allowed::none();
        }
        switch (e.kind) {
        case ExprKind::Not:
            return run(*e.args[0], !pol);
        case ExprKind::And:
        case ExprKind::Or: {
            const bool conj = (e.kind == ExprKind::And) == pol;
            Allowed acc = run(*e.args[0], pol);
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                const Allowed next = run(*e.args[i], pol);
                acc = conj ? intersect(acc, next) : unite(acc, next);
            }
            return acc;
        }
        case ExprKind::Implies:
            return pol ? unite(run(*e.args[0], false), run(*e.args[1], true))
                       : intersect(run(*e.args[0], true), run(*e.args[1], false));
        case ExprKind::Eq:
        case ExprKind::Lt:
        case ExprKind::Le:
        case ExprKind::Gt:
        case ExprKind::Ge:
            return atom(e, pol);
        default:
            return Allowed::any();
        }
    }

  private:
    [[nodiscard]] bool mentions_result(const Expr& e) const {
        if (e.kind == ExprKind::Var) return results_.count(e.var) > 0;
        for (const auto& a : e.args) {
            if (mentions_result(*a)) return true;
        }
        return false;
    }

    [[nodiscard]] bool is_target(const Expr& e) const { return e.kind == ExprKind::Var && e.var == result_; }

    static ExprKind mirrored(ExprKind k) {
        switch (k) {
        case ExprKind::Lt:
            return ExprKind::Gt;
        case ExprKind::Le:
            return ExprKind::Ge;
        case ExprKind::Gt:
            return ExprKind::Lt;
        case ExprKind::Ge:
            return ExprKind::Le;
        default:
            return k;
        }
    }

    static std::optional<ExprKind> negated(ExprKind k) {
        switch (k) {
        case ExprKind::Lt:
            return ExprKind::Ge;
        case ExprKind::Le:
            return ExprKind::Gt;
        case ExprKind::Gt:
            return ExprKind::Le;
        case ExprKind::Ge:
            return ExprKind::Lt;
        default:
            return std::nullopt;
        }
    }

    Allowed atom(const Expr& e, bool pol) const {
        if (e.args[0]->type != ScalarType::Int) return Allowed::any();
        ExprKind kind = e.kind;
        const Expr* other = nullptr;
        if (is_target(*e.args[0]) && !mentions_result(*e.args[1])) {
            other = e.args[1].get();
        } else if (is_target(*e.args[1]) && !mentions_result(*e.args[0])) {
            other = e.args[0].get();
            kind = mirrored(kind);
        } else {
            return Allowed::any();
        }
        if (!pol) {
            const auto neg = negated(kind);
            if (!neg) return Allowed::any();
            kind = *neg;
        }
        const Integer t = eval_expr(*other, binding_).as_int();
        Allowed a;
        switch (kind) {
        case ExprKind::Eq:
            a.set = std::set<Integer>{t};
            break;
        case ExprKind::Lt:
            a.bounds.hi = t - 1;
            break;
        case ExprKind::Le:
            a.bounds.hi = t;
            break;
        case ExprKind::Gt:
            a.bounds.lo = t + 1;
            break;
        case ExprKind::Ge:
            a.bounds.lo = t;
            break;
        default:
            break;
        }
        return a;
    }

    const ValueVector& binding_;
    std::size_t result_;
    std::set<std::size_t> results_;
};

std::string vector_text(const std::vector<Integer>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].str();
    }
    return out + ")";
}

std::string rational_text(const std::vector<Rational>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].str();
    }
    return out + ")";
}

std::vector<Integer> ints_of(const ValueVector& v) {
    std::vector<Integer> out;
    for (const auto& x : v) out.push_back(x.as_int());
    return out;
}

std::string rejection_detail(const NtAbstraction& a, const std::string& component, const ValueVector& v,
                             const std::vector<std::string>& names) {
    if (component == "affine") {
        const auto ints = ints_of(v);
        for (const auto& rel : a.affine.relations()) {
            Integer lhs = 0;
            for (std::size_t c = 0; c < ints.size(); ++c) lhs += rel.coeffs[c] * ints[c];
            if (lhs != rel.rhs) return to_string(rel, names) + " but the candidate gives " + lhs.str();
        }
        return "outside the affine hull";
    }
    if (component == "congruence" || component == "interval") {
        for (std::size_t c = 0; c < v.size(); ++c) {
            const Integer& x = v[c].as_int();
            if (component == "congruence" && !a.congruences[c].contains(x)) {
                return names[c] + " " + to_string(a.congruences[c]) + " but the candidate gives " + x.str();
            }
            if (component == "interval" && !a.intervals[c].contains(x)) {
                return names[c] + " in " + to_string(a.intervals[c]) + " but the candidate gives " + x.str();
            }
        }
    }
    if (component == "lattice") {
        return "not in base + integer span of the lattice rows (index " + a.lattice.index().str() + ")";
    }
    if (component == "bool-set") return "vector not among the reachable Bool vectors";
    return component;
}

ReachVerdict unknown(std::string reason) {
    ReachVerdict v;
    v.kind = ReachVerdict::Kind::Unknown;
    v.reason = std::move(reason);
    v.engine = "abstract";
    return v;
}

} // namespace

std::vector<std::string> column_names(const ProgramIr& program) {
    std::vector<std::string> names;
    for (std::size_t m = 0; m < program.k; ++m) {
        for (std::size_t j = 0; j < program.s; ++j) {
            names.push_back(program.s == 1 ? "o[e" + std::to_string(m) + "]"
                                           : "o[e" + std::to_string(m) + "," + std::to_string(j) + "]");
        }
    }
    return names;
}

std::string_view to_string(ReachVerdict::Kind kind) {
    switch (kind) {
    case ReachVerdict::Kind::SatWitness:
        return "sat-witness";
    case ReachVerdict::Kind::ProvedUnsat:
        return "proved-unsat";
    case ReachVerdict::Kind::Unknown:
        return "unknown";
    }
    return "unknown";
}

CandidateSets spec_candidates(const ProgramIr& program, const std::vector<Interval>* bounds, std::size_t limit) {
    CandidateSets out;
    const FlatSpec& spec = program.spec;
    if (!spec.single_call_form) {
        out.why_not = "outputs are unconstrained whenever a defining hypothesis fails";
        return out;
    }
    const auto example_vars = spec.example_vars();
    for (std::size_t m = 0; m < program.k; ++m) {
        ValueVector binding;
        for (const auto& v : spec.vars) binding.push_back(v.type == ScalarType::Int ? Value::of_int(0) : Value::of_bool(false));
        for (std::size_t i = 0; i < example_vars.size(); ++i) binding[example_vars[i]] = program.examples[m][i];
        std::vector<std::vector<Value>> slot_values;
        for (std::size_t j = 0; j < program.s; ++j) {
            const std::size_t r = spec.calls[j].result;
            std::vector<Value> values;
            if (spec.vars[r].type == ScalarType::Bool) {
                values = {Value::of_bool(false), Value::of_bool(true)};
            } else {
                Allowed a = SlotAnalysis(spec, binding, r).run(*spec.body, true);
                if (bounds) a.bounds = a.bounds.meet((*bounds)[program.column(m, j)]);
                if (a.set) {
                    for (const auto& v : a.filtered()) values.push_back(Value::of_int(v));
                } else if (a.bounds.empty()) {
                } else if (const auto w = a.bounds.width(); w && *w <= limit) {
                    for (Integer v = *a.bounds.lo; v <= *a.bounds.hi; ++v) values.push_back(Value::of_int(v));
                } else {
                    out.why_not = "output of example " + std::to_string(m) + " is not confined to a finite set";
                    return out;
                }
            }
            slot_values.push_back(std::move(values));
        }
        std::size_t total = 1;
        for (const auto& vs : slot_values) {
            total *= vs.size();
            if (total > limit) {
                out.why_not = "more than " + std::to_string(limit) + " candidate outputs for example " + std::to_string(m);
                return out;
            }
        }
        std::vector<ValueVector> tuples;
        std::vector<std::size_t> idx(program.s, 0);
        for (std::size_t t = 0; t < total; ++t) {
            ValueVector tuple;
            std::size_t rest = t;
            for (std::size_t j = program.s; j-- > 0;) {
                idx[j] = rest % slot_values[j].size();
                rest /= slot_values[j].size();
            }
            for (std::size_t j = 0; j < program.s; ++j) tuple.push_back(slot_values[j][idx[j]]);
            if (eval_spec(spec, program.examples[m], tuple)) tuples.push_back(std::move(tuple));
        }
        out.per_example.push_back(std::move(tuples));
    }
    out.finite = true;
    return out;
}

ReachVerdict abstract_prove(const ReachabilityProblem& rp, const AbstractOptions& options, std::stop_token stop) {
    const ProgramIr& program = rp.program;
    const Rtg& g = *program.grammar;
    FixpointResult fp = compute_fixpoint(program, options, stop);
    if (fp.cancelled) return unknown("cancelled");
    if (!fp.converged) return unknown("budget: fixpoint iteration limit reached");

    Certificate cert;
    cert.problem = rp.name;
    cert.column_names = column_names(program);
    cert.examples = program.examples;
    const NtAbstraction& start = fp.state.nts[g.start()];
    auto proved = [&](std::string reason) {
        ReachVerdict v;
        v.kind = ReachVerdict::Kind::ProvedUnsat;
        v.engine = "abstract";
        v.reason = reason;
        cert.reason = std::move(reason);
        cert.state = std::move(fp.state);
        v.certificate = std::move(cert);
        return v;
    };
    if (!start.reached) return proved("the start nonterminal derives no term");

    CandidateSets cands =
        spec_candidates(program, start.type == ScalarType::Int ? &start.intervals : nullptr, options.candidate_limit);
    if (!cands.finite) return unknown("imprecision: " + cands.why_not + "; the chc-emit backend may decide it");
    for (std::size_t m = 0; m < cands.per_example.size(); ++m) {
        if (cands.per_example[m].empty()) {
            return proved("no output satisfies the specification on example e" + std::to_string(m));
        }
    }

    auto product_size = [&]() {
        std::size_t total = 1;
        for (const auto& ts : cands.per_example) {
            if (total > (options.candidate_limit + 1) / ts.size()) return options.candidate_limit + 1;
            total *= ts.size();
        }
        return total;
    };
    if (product_size() > options.candidate_limit && start.type == ScalarType::Int) {
        for (std::size_t m = 0; m < cands.per_example.size(); ++m) {
            std::vector<ValueVector> kept;
            for (auto& tuple : cands.per_example[m]) {
                std::string why;
                for (std::size_t j = 0; j < tuple.size() && why.empty(); ++j) {
                    const std::size_t c = program.column(m, j);
                    const Integer& x = tuple[j].as_int();
                    if (!start.congruences[c].contains(x)) {
                        why = cert.column_names[c] + " = " + x.str() + " excluded by congruence " +
                              to_string(start.congruences[c]);
                    } else if (!start.intervals[c].contains(x)) {
                        why = cert.column_names[c] + " = " + x.str() + " excluded by interval " +
                              to_string(start.intervals[c]);
                    }
                }
                if (why.empty()) {
                    kept.push_back(std::move(tuple));
                } else {
                    cert.pruned.push_back(std::move(why));
                }
            }
            if (kept.empty()) return proved("every candidate output of example e" + std::to_string(m) + " is excluded");
            cands.per_example[m] = std::move(kept);
        }
    }
    const std::size_t total = product_size();
    if (total > options.candidate_limit) {
        return unknown("imprecision: more than " + std::to_string(options.candidate_limit) + " candidate vectors");
    }

    const std::size_t k = cands.per_example.size();
    for (std::size_t t = 0; t < total; ++t) {
        if ((t & 1023U) == 0 && stop.stop_requested()) return unknown("cancelled");
        ValueVector v;
        std::size_t rest = t;
        std::vector<std::size_t> idx(k);
        for (std::size_t m = k; m-- > 0;) {
            idx[m] = rest % cands.per_example[m].size();
            rest /= cands.per_example[m].size();
        }
        for (std::size_t m = 0; m < k; ++m) {
            const auto& tuple = cands.per_example[m][idx[m]];
            v.insert(v.end(), tuple.begin(), tuple.end());
        }
        const std::string component = start.excluded_by(v);
        if (component.empty()) {
            return unknown("candidate-reachable: " + to_string(v) + " lies inside the abstraction");
        }
        cert.rejected.push_back({v, component, rejection_detail(start, component, v, cert.column_names)});
    }
    return proved("every spec-satisfying output vector lies outside the abstraction of " +
                  g.nonterminal(g.start()).name);
}

std::string to_text(const Certificate& cert, const Rtg& grammar) {
    std::ostringstream os;
    os << "unrealizability certificate\n";
    os << "problem: " << cert.problem << "\n";
    os << "examples: " << cert.examples.size() << "\n";
    for (std::size_t m = 0; m < cert.examples.size(); ++m) os << "  e" << m << " = " << to_string(cert.examples[m]) << "\n";
    os << "columns:";
    for (const auto& n : cert.column_names) os << " " << n;
    os << "\n";
    os << "reason: " << cert.reason << "\n";
    for (std::size_t i = 0; i < cert.state.nts.size(); ++i) {
        const auto& a = cert.state.nts[i];
        os << "nonterminal " << grammar.nonterminal(i).name << " (" << to_string(a.type) << ")\n";
        if (!a.reached) {
            os << "  unreached\n";
            continue;
        }
        if (a.type == ScalarType::Bool) {
            os << "  vectors: " << to_string(a.bools) << "\n";
            continue;
        }
        const auto rels = a.affine.relations();
        os << "  affine: dimension " << a.affine.dimension() << ", base " << rational_text(a.affine.base()) << "\n";
        for (const auto& rel : rels) os << "    " << to_string(rel, cert.column_names) << "\n";
        os << "  lattice: rank " << a.lattice.rank() << ", index " << a.lattice.index().str() << ", base "
           << vector_text(a.lattice.base()) << "\n";
        for (const auto& row : a.lattice.rows()) os << "    row " << vector_text(row) << "\n";
        os << "  intervals:";
        for (std::size_t c = 0; c < a.intervals.size(); ++c) {
            os << " " << cert.column_names[c] << " in " << to_string(a.intervals[c]) << (c + 1 < a.intervals.size() ? ";" : "");
        }
        os << "\n  congruences:";
        for (std::size_t c = 0; c < a.congruences.size(); ++c) {
            os << " " << cert.column_names[c] << " " << to_string(a.congruences[c])
               << (c + 1 < a.congruences.size() ? ";" : "");
        }
        os << "\n";
    }
    if (!cert.pruned.empty()) {
        os << "pruned outputs: " << cert.pruned.size() << "\n";
        for (const auto& p : cert.pruned) os << "  " << p << "\n";
    }
    os << "candidates: " << cert.rejected.size() << "\n";
    for (const auto& r : cert.rejected) {
        os << "  " << to_string(r.vector) << " excluded by " << r.component << ": " << r.detail << "\n";
    }
    os << "conclusion: no term satisfies the specification on these " << cert.examples.size() << " examples\n";
    return os.str();
}

} // namespace unreal
