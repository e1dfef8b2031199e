// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include "unreal/domains/numeric.hpp"

#include <algorithm>
#include <optional>

namespace unreal {

namespace {

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

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) {
        r += m;
    }
    return r;
}

std::optional<Integer> min_opt(const std::optional<Integer>& a, const std::optional<Integer>& b) {
    if (!a || !b) return std::nullopt;
    return std::min(*a, *b);
}

std::optional<Integer> max_opt(const std::optional<Integer>& a, const std::optional<Integer>& b) {
    if (!a || !b) return std::nullopt;
    return std::max(*a, *b);
}

} // namespace

bool Interval::includes(const Interval& o) const {
    if (o.empty()) return true;
    const bool lo_ok = !lo || (o.lo && *lo <= *o.lo);
    const bool hi_ok = !hi || (o.hi && *o.hi <= *hi);
    return lo_ok && hi_ok;
}

std::optional<Integer> Interval::width() const {
    if (!lo || !hi) return std::nullopt;
    if (*hi < *lo) return Integer(0);
    return Integer(*hi - *lo + 1);
}

Interval Interval::join(const Interval& o) const {
    if (empty()) return o;
    if (o.empty()) return *this;
    return {min_opt(lo, o.lo), max_opt(hi, o.hi)};
}

Interval Interval::meet(const Interval& o) const {
    Interval out;
    out.lo = !lo ? o.lo : !o.lo ? lo : std::max(*lo, *o.lo);
    out.hi = !hi ? o.hi : !o.hi ? hi : std::min(*hi, *o.hi);
    return out;
}

Interval Interval::plus(const Interval& o) const {
    Interval out;
    if (lo && o.lo) out.lo = *lo + *o.lo;
    if (hi && o.hi) out.hi = *hi + *o.hi;
    return out;
}

Interval Interval::minus(const Interval& o) const {
    Interval out;
    if (lo && o.hi) out.lo = *lo - *o.hi;
    if (hi && o.lo) out.hi = *hi - *o.lo;
    return out;
}

Interval Interval::widen(const Interval& next) const {
    Interval out = next;
    if (lo && (!next.lo || *next.lo < *lo)) out.lo.reset();
    if (hi && (!next.hi || *next.hi > *hi)) out.hi.reset();
    return out;
}

std::string to_string(const Interval& i) {
    return "[" + (i.lo ? i.lo->str() : std::string("-inf")) + ", " + (i.hi ? i.hi->str() : std::string("+inf")) + "]";
}

Congruence make_congruence(const Integer& m, const Integer& r) {
    const Integer mm = abs_int(m);
    if (mm == 0) return {0, r};
    return {mm, mod_floor(r, mm)};
}

bool Congruence::contains(const Integer& v) const {
    if (m == 0) return v == r;
    return mod_floor(Integer(v - r), m) == 0;
}

bool Congruence::includes(const Congruence& o) const {
    if (m == 0) return o.m == 0 && o.r == r;
    return o.m % m == 0 && mod_floor(Integer(o.r - r), m) == 0;
}

Congruence Congruence::join(const Congruence& o) const {
    return make_congruence(gcd_int(gcd_int(m, o.m), Integer(r - o.r)), r);
}

Congruence Congruence::plus(const Congruence& o) const { return make_congruence(gcd_int(m, o.m), Integer(r + o.r)); }

Congruence Congruence::minus(const Congruence& o) const { return make_congruence(gcd_int(m, o.m), Integer(r - o.r)); }

bool Congruence::may_equal(const Congruence& o) const {
    const Integer g = gcd_int(m, o.m);
    if (g == 0) return r == o.r;
    return mod_floor(Integer(r - o.r), g) == 0;
}

std::string to_string(const Congruence& c) {
    if (c.m == 0) return "= " + c.r.str();
    if (c.m == 1) return "any";
    return "= " + c.r.str() + " mod " + c.m.str();
}

BoolSet BoolSet::empty(std::size_t n) {
    BoolSet b;
    b.n_ = n;
    return b;
}

BoolSet BoolSet::top(std::size_t n) {
    BoolSet b;
    b.n_ = n;
    b.top_ = true;
    return b;
}

BoolSet BoolSet::single(std::size_t n, std::uint64_t v) {
    if (n > 64) return top(n);
    BoolSet b;
    b.n_ = n;
    b.vecs_.push_back(v & b.full_mask());
    return b;
}

BoolSet BoolSet::product(const std::vector<bool>& can_true, const std::vector<bool>& can_false) {
    const std::size_t n = can_true.size();
    if (n > 64) return top(n);
    std::size_t free = 0;
    std::uint64_t fixed = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (!can_true[c] && !can_false[c]) return empty(n);
        if (can_true[c] && can_false[c]) {
            ++free;
        } else if (can_true[c]) {
            fixed |= std::uint64_t{1} << c;
        }
    }
    if (free > 16) return top(n);
    BoolSet b = empty(n);
    std::vector<std::size_t> free_coords;
    for (std::size_t c = 0; c < n; ++c) {
        if (can_true[c] && can_false[c]) free_coords.push_back(c);
    }
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free); ++bits) {
        std::uint64_t v = fixed;
        for (std::size_t i = 0; i < free; ++i) {
            if ((bits >> i) & 1U) v |= std::uint64_t{1} << free_coords[i];
        }
        b.vecs_.push_back(v);
    }
    if (free == n) return top(n);
    b.normalize();
    return b;
}

void BoolSet::normalize() {
    if (top_) {
        vecs_.clear();
        return;
    }
    std::sort(vecs_.begin(), vecs_.end());
    vecs_.erase(std::unique(vecs_.begin(), vecs_.end()), vecs_.end());
    if (vecs_.size() > max_size || (n_ < 64 && vecs_.size() == (std::uint64_t{1} << n_))) {
        top_ = true;
        vecs_.clear();
    }
}

bool BoolSet::contains(std::uint64_t v) const {
    if (top_) return (v & ~full_mask()) == 0;
    return std::binary_search(vecs_.begin(), vecs_.end(), v);
}

bool BoolSet::includes(const BoolSet& o) const {
    if (top_) return true;
    if (o.top_) return false;
    return std::includes(vecs_.begin(), vecs_.end(), o.vecs_.begin(), o.vecs_.end());
}

bool BoolSet::may_be(std::size_t c, bool value) const {
    if (top_) return true;
    return std::any_of(vecs_.begin(), vecs_.end(), [&](std::uint64_t v) { return (((v >> c) & 1U) != 0) == value; });
}

BoolSet BoolSet::join(const BoolSet& o) const {
    if (top_ || o.top_) return top(n_);
    BoolSet b = *this;
    b.vecs_.insert(b.vecs_.end(), o.vecs_.begin(), o.vecs_.end());
    b.normalize();
    return b;
}

BoolSet BoolSet::negate() const {
    if (top_) return *this;
    BoolSet b = *this;
    for (auto& v : b.vecs_) v = ~v & full_mask();
    b.normalize();
    return b;
}

namespace {

// Members of `s`, with top expanded when it is small enough.
std::optional<std::vector<std::uint64_t>> members(const BoolSet& s) {
    if (!s.is_top()) return s.vectors();
    if (s.dims() >= 64 || (std::uint64_t{1} << s.dims()) > BoolSet::max_size) return std::nullopt;
    std::vector<std::uint64_t> all(std::size_t{1} << s.dims());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
}

} // namespace

BoolSet BoolSet::combine(const BoolSet& o, bool conjunction) const {
    if (is_empty() || o.is_empty()) return empty(n_);
    const auto xs = members(*this);
    const auto ys = members(o);
    if (!xs || !ys || xs->size() * ys->size() > max_pairs) return top(n_);
    BoolSet b = empty(n_);
    for (auto x : *xs) {
        for (auto y : *ys) b.vecs_.push_back(conjunction ? x & y : x | y);
    }
    b.normalize();
    return b;
}

BoolSet BoolSet::conj(const BoolSet& o) const { return combine(o, true); }

BoolSet BoolSet::disj(const BoolSet& o) const { return combine(o, false); }

std::string to_string(const BoolSet& b) {
    if (b.is_top()) return "all " + std::to_string(b.dims()) + "-bit vectors";
    std::string out = "{";
    for (std::size_t i = 0; i < b.vectors().size(); ++i) {
        if (i) out += ", ";
        if (i == 8) {
            out += "... (" + std::to_string(b.size()) + " total)";
            break;
        }
        std::string bits;
        for (std::size_t c = 0; c < b.dims(); ++c) bits += ((b.vectors()[i] >> c) & 1U) ? '1' : '0';
        out += bits;
    }
    return out + "}";
}

} // namespace unreal
