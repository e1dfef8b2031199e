// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include "unreal/domains/affine.hpp"

#include <algorithm>
#include <stdexcept>

namespace unreal {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }

Integer gcd_int(Integer a, Integer b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

// g = u*a + w*b with g = gcd(a, b) >= 0.
void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& u, Integer& w) {
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = std::move(r);
        r = std::move(tmp);
        tmp = old_s - q * s;
        old_s = std::move(s);
        s = std::move(tmp);
        tmp = old_t - q * t;
        old_t = std::move(t);
        t = std::move(tmp);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    u = old_s;
    w = old_t;
}

std::vector<Rational> to_rational(std::span<const Integer> v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.emplace_back(x);
    }
    return out;
}

bool is_zero(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool is_zero(const std::vector<Integer>& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

template <class T>
std::vector<T> masked(const std::vector<T>& v, std::uint64_t mask, bool keep_set) {
    std::vector<T> out = v;
    for (std::size_t c = 0; c < out.size(); ++c) {
        const bool set = ((mask >> c) & 1U) != 0;
        if (set != keep_set) {
            out[c] = 0;
        }
    }
    return out;
}

} // namespace

AffineSet AffineSet::bottom(std::size_t n) { return AffineSet(n); }

AffineSet AffineSet::top(std::size_t n) {
    AffineSet a(n);
    a.bottom_ = false;
    a.base_.assign(n, Rational(0));
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Rational> e(n, Rational(0));
        e[c] = 1;
        a.dirs_.push_back(std::move(e));
        a.pivots_.push_back(c);
    }
    return a;
}

AffineSet AffineSet::point(std::span<const Integer> v) {
    AffineSet a(v.size());
    a.bottom_ = false;
    a.base_ = to_rational(v);
    return a;
}

void AffineSet::reduce(std::vector<Rational>& v) const {
    for (std::size_t i = 0; i < dirs_.size(); ++i) {
        const Rational f = v[pivots_[i]];
        if (f != 0) {
            for (std::size_t c = 0; c < n_; ++c) {
                v[c] -= f * dirs_[i][c];
            }
        }
    }
}

void AffineSet::add_direction(std::vector<Rational> v) {
    reduce(v);
    std::size_t p = 0;
    while (p < n_ && v[p] == 0) {
        ++p;
    }
    if (p == n_) {
        return;
    }
    const Rational lead = v[p];
    for (auto& x : v) {
        x /= lead;
    }
    for (auto& row : dirs_) {
        const Rational f = row[p];
        if (f != 0) {
            for (std::size_t c = 0; c < n_; ++c) {
                row[c] -= f * v[c];
            }
        }
    }
    const auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin());
    dirs_.insert(dirs_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
}

void AffineSet::canonicalize_base() { reduce(base_); }

bool AffineSet::contains(std::span<const Integer> v) const {
    if (bottom_) {
        return false;
    }
    std::vector<Rational> d = to_rational(v);
    for (std::size_t c = 0; c < n_; ++c) {
        d[c] -= base_[c];
    }
    reduce(d);
    return is_zero(d);
}

bool AffineSet::includes(const AffineSet& other) const {
    if (other.bottom_) {
        return true;
    }
    if (bottom_) {
        return false;
    }
    std::vector<Rational> d = other.base_;
    for (std::size_t c = 0; c < n_; ++c) {
        d[c] -= base_[c];
    }
    reduce(d);
    if (!is_zero(d)) {
        return false;
    }
    for (auto dir : other.dirs_) {
        reduce(dir);
        if (!is_zero(dir)) {
            return false;
        }
    }
    return true;
}

AffineSet AffineSet::join(const AffineSet& other) const {
    if (bottom_) return other;
    if (other.bottom_) return *this;
    AffineSet out = *this;
    for (const auto& d : other.dirs_) {
        out.add_direction(d);
    }
    std::vector<Rational> delta = other.base_;
    for (std::size_t c = 0; c < n_; ++c) {
        delta[c] -= base_[c];
    }
    out.add_direction(std::move(delta));
    out.canonicalize_base();
    return out;
}

AffineSet AffineSet::plus(const AffineSet& other) const {
    if (bottom_ || other.bottom_) return bottom(n_);
    AffineSet out = *this;
    for (std::size_t c = 0; c < n_; ++c) {
        out.base_[c] += other.base_[c];
    }
    for (const auto& d : other.dirs_) {
        out.add_direction(d);
    }
    out.canonicalize_base();
    return out;
}

AffineSet AffineSet::minus(const AffineSet& other) const {
    if (bottom_ || other.bottom_) return bottom(n_);
    AffineSet out = *this;
    for (std::size_t c = 0; c < n_; ++c) {
        out.base_[c] -= other.base_[c];
    }
    for (const auto& d : other.dirs_) {
        out.add_direction(d);
    }
    out.canonicalize_base();
    return out;
}

AffineSet AffineSet::mix(std::uint64_t mask, const AffineSet& l, const AffineSet& r) {
    if (l.bottom_ || r.bottom_) return bottom(l.n_);
    AffineSet out(l.n_);
    out.bottom_ = false;
    out.base_.resize(l.n_);
    for (std::size_t c = 0; c < l.n_; ++c) {
        out.base_[c] = ((mask >> c) & 1U) != 0 ? l.base_[c] : r.base_[c];
    }
    for (const auto& d : l.dirs_) {
        out.add_direction(masked(d, mask, true));
    }
    for (const auto& d : r.dirs_) {
        out.add_direction(masked(d, mask, false));
    }
    out.canonicalize_base();
    return out;
}

std::vector<LinearRelation> AffineSet::relations() const {
    std::vector<LinearRelation> out;
    if (bottom_) {
        return out;
    }
    std::vector<bool> is_pivot(n_, false);
    for (auto p : pivots_) {
        is_pivot[p] = true;
    }
    for (std::size_t f = 0; f < n_; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        // Null-space vector of the direction rows: a_f = 1, a_p = -row[f].
        std::vector<Rational> a(n_, Rational(0));
        a[f] = 1;
        for (std::size_t i = 0; i < dirs_.size(); ++i) {
            a[pivots_[i]] = -dirs_[i][f];
        }
        Integer lcm = 1;
        for (const auto& x : a) {
            const Integer d = boost::multiprecision::denominator(x);
            lcm = lcm / gcd_int(lcm, d) * d;
        }
        LinearRelation rel;
        Rational rhs = 0;
        for (std::size_t c = 0; c < n_; ++c) {
            const Rational scaled = a[c] * Rational(lcm);
            rel.coeffs.push_back(boost::multiprecision::numerator(scaled));
            rhs += scaled * base_[c];
        }
        rel.rhs = boost::multiprecision::numerator(rhs);
        Integer g = abs_int(rel.rhs);
        for (const auto& x : rel.coeffs) {
            g = gcd_int(g, x);
        }
        if (g > 1) {
            for (auto& x : rel.coeffs) x /= g;
            rel.rhs /= g;
        }
        out.push_back(std::move(rel));
    }
    return out;
}

IntLattice IntLattice::bottom(std::size_t n) { return IntLattice(n); }

IntLattice IntLattice::top(std::size_t n) {
    IntLattice l(n);
    l.bottom_ = false;
    l.base_.assign(n, Integer(0));
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Integer> e(n, Integer(0));
        e[c] = 1;
        l.rows_.push_back(std::move(e));
        l.pivots_.push_back(c);
    }
    return l;
}

IntLattice IntLattice::point(std::span<const Integer> v) {
    IntLattice l(v.size());
    l.bottom_ = false;
    l.base_.assign(v.begin(), v.end());
    return l;
}

Integer IntLattice::index() const {
    if (rows_.size() < n_) {
        return 0;
    }
    Integer idx = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        idx *= rows_[i][pivots_[i]];
    }
    return idx;
}

void IntLattice::add_generator(std::vector<Integer> v) {
    std::size_t i = 0;
    for (;;) {
        std::size_t lead = 0;
        while (lead < n_ && v[lead] == 0) {
            ++lead;
        }
        if (lead == n_) {
            return;
        }
        while (i < rows_.size() && pivots_[i] < lead) {
            ++i;
        }
        if (i == rows_.size() || pivots_[i] > lead) {
            if (v[lead] < 0) {
                for (auto& x : v) x = -x;
            }
            rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(i), std::move(v));
            pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(i), lead);
            return;
        }
        // Same pivot column: unimodular combination leaves the gcd in the row.
        std::vector<Integer>& row = rows_[i];
        Integer g, u, w;
        ext_gcd(row[lead], v[lead], g, u, w);
        const Integer a = row[lead] / g;
        const Integer b = v[lead] / g;
        std::vector<Integer> next_row(n_), rest(n_);
        for (std::size_t c = 0; c < n_; ++c) {
            next_row[c] = u * row[c] + w * v[c];
            rest[c] = a * v[c] - b * row[c];
        }
        row = std::move(next_row);
        v = std::move(rest);
        ++i;
    }
}

void IntLattice::normalize() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t j = i + 1; j < rows_.size(); ++j) {
            const std::size_t p = pivots_[j];
            const Integer q = floor_div(rows_[i][p], rows_[j][p]);
            if (q != 0) {
                for (std::size_t c = 0; c < n_; ++c) {
                    rows_[i][c] -= q * rows_[j][c];
                }
            }
        }
    }
    // Rows above are reduced against later rows; base likewise.
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        const std::size_t p = pivots_[j];
        const Integer q = floor_div(base_[p], rows_[j][p]);
        if (q != 0) {
            for (std::size_t c = 0; c < n_; ++c) {
                base_[c] -= q * rows_[j][c];
            }
        }
    }
}

bool IntLattice::in_lattice(std::vector<Integer> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::size_t p = pivots_[i];
        for (std::size_t c = 0; c < p; ++c) {
            if (v[c] != 0) {
                return false;
            }
        }
        if (v[p] % rows_[i][p] != 0) {
            return false;
        }
        const Integer q = v[p] / rows_[i][p];
        if (q != 0) {
            for (std::size_t c = 0; c < n_; ++c) {
                v[c] -= q * rows_[i][c];
            }
        }
    }
    return is_zero(v);
}

bool IntLattice::contains(std::span<const Integer> v) const {
    if (bottom_) {
        return false;
    }
    std::vector<Integer> d(v.begin(), v.end());
    for (std::size_t c = 0; c < n_; ++c) {
        d[c] -= base_[c];
    }
    return in_lattice(std::move(d));
}

bool IntLattice::includes(const IntLattice& other) const {
    if (other.bottom_) return true;
    if (bottom_) return false;
    if (!contains(other.base_)) return false;
    return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const auto& r) { return in_lattice(r); });
}

IntLattice IntLattice::join(const IntLattice& other) const {
    if (bottom_) return other;
    if (other.bottom_) return *this;
    IntLattice out = *this;
    for (const auto& r : other.rows_) {
        out.add_generator(r);
    }
    std::vector<Integer> delta = other.base_;
    for (std::size_t c = 0; c < n_; ++c) {
        delta[c] -= base_[c];
    }
    out.add_generator(std::move(delta));
    out.normalize();
    return out;
}

IntLattice IntLattice::plus(const IntLattice& other) const {
    if (bottom_ || other.bottom_) return bottom(n_);
    IntLattice out = *this;
    for (std::size_t c = 0; c < n_; ++c) {
        out.base_[c] += other.base_[c];
    }
    for (const auto& r : other.rows_) {
        out.add_generator(r);
    }
    out.normalize();
    return out;
}

IntLattice IntLattice::minus(const IntLattice& other) const {
    if (bottom_ || other.bottom_) return bottom(n_);
    IntLattice out = *this;
    for (std::size_t c = 0; c < n_; ++c) {
        out.base_[c] -= other.base_[c];
    }
    for (const auto& r : other.rows_) {
        out.add_generator(r);
    }
    out.normalize();
    return out;
}

IntLattice IntLattice::mix(std::uint64_t mask, const IntLattice& l, const IntLattice& r) {
    if (l.bottom_ || r.bottom_) return bottom(l.n_);
    IntLattice out(l.n_);
    out.bottom_ = false;
    out.base_.resize(l.n_);
    for (std::size_t c = 0; c < l.n_; ++c) {
        out.base_[c] = ((mask >> c) & 1U) != 0 ? l.base_[c] : r.base_[c];
    }
    for (const auto& row : l.rows_) {
        out.add_generator(masked(row, mask, true));
    }
    for (const auto& row : r.rows_) {
        out.add_generator(masked(row, mask, false));
    }
    out.normalize();
    return out;
}

std::string to_string(const LinearRelation& rel, std::span<const std::string> names) {
    std::string lhs;
    for (std::size_t c = 0; c < rel.coeffs.size(); ++c) {
        const Integer& a = rel.coeffs[c];
        if (a == 0) {
            continue;
        }
        const bool neg = a < 0;
        const Integer mag = neg ? Integer(-a) : a;
        if (lhs.empty()) {
            lhs += neg ? "-" : "";
        } else {
            lhs += neg ? " - " : " + ";
        }
        lhs += (mag == 1 ? std::string() : mag.str() + "*") + names[c];
    }
    if (lhs.empty()) {
        lhs = "0";
    }
    return lhs + " = " + rel.rhs.str();
}

} // namespace unreal
