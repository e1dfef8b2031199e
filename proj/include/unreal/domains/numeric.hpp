// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unreal/value.hpp"

namespace unreal {

/// Closed integer interval; a missing bound is infinite.
struct Interval {
    std::optional<Integer> lo;
    std::optional<Integer> hi;

    static Interval point(const Integer& v) { return {v, v}; }
    static Interval top() { return {}; }

    [[nodiscard]] bool contains(const Integer& v) const { return (!lo || *lo <= v) && (!hi || v <= *hi); }
    [[nodiscard]] bool includes(const Interval& o) const;
    [[nodiscard]] bool is_point() const { return lo && hi && *lo == *hi; }
    /// Number of members when finite.
    [[nodiscard]] std::optional<Integer> width() const;

    [[nodiscard]] Interval join(const Interval& o) const;
    [[nodiscard]] Interval meet(const Interval& o) const;
    [[nodiscard]] Interval plus(const Interval& o) const;
    [[nodiscard]] Interval minus(const Interval& o) const;
    /// Standard widening: bounds that grew become infinite.
    [[nodiscard]] Interval widen(const Interval& next) const;
    [[nodiscard]] bool empty() const { return lo && hi && *lo > *hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& i);

/// `v = r (mod m)`: m == 0 is the exact constant r, m == 1 is top.
struct Congruence {
    Integer m{1};
    Integer r{0};

    static Congruence exact(const Integer& v) { return {0, v}; }
    static Congruence top() { return {1, 0}; }

    [[nodiscard]] bool contains(const Integer& v) const;
    [[nodiscard]] bool includes(const Congruence& o) const;
    [[nodiscard]] Congruence join(const Congruence& o) const;
    [[nodiscard]] Congruence plus(const Congruence& o) const;
    [[nodiscard]] Congruence minus(const Congruence& o) const;
    /// Whether some member of this equals some member of `o`.
    [[nodiscard]] bool may_equal(const Congruence& o) const;

    friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Builds a normalized congruence (residue reduced into [0, m)).
Congruence make_congruence(const Integer& m, const Integer& r);

std::string to_string(const Congruence& c);

/// Explicit set of Bool vectors over n <= 64 coordinates (bit c = coordinate
/// c), or top (every vector). Sets larger than `max_size` collapse to top.
class BoolSet {
  public:
    static constexpr std::size_t max_size = 1U << 16;
    static constexpr std::size_t max_pairs = 1U << 20;

    static BoolSet empty(std::size_t n);
    static BoolSet top(std::size_t n);
    static BoolSet single(std::size_t n, std::uint64_t v);
    /// Product of per-coordinate possibility sets; `can_true[c]`/`can_false[c]`.
    static BoolSet product(const std::vector<bool>& can_true, const std::vector<bool>& can_false);

    [[nodiscard]] std::size_t dims() const { return n_; }
    [[nodiscard]] bool is_top() const { return top_; }
    [[nodiscard]] bool is_empty() const { return !top_ && vecs_.empty(); }
    [[nodiscard]] const std::vector<std::uint64_t>& vectors() const { return vecs_; }
    [[nodiscard]] std::size_t size() const { return vecs_.size(); }
    [[nodiscard]] std::uint64_t full_mask() const { return n_ >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1); }

    [[nodiscard]] bool contains(std::uint64_t v) const;
    [[nodiscard]] bool includes(const BoolSet& o) const;
    /// Coordinate c may be true / false in some member.
    [[nodiscard]] bool may_be(std::size_t c, bool value) const;

    [[nodiscard]] BoolSet join(const BoolSet& o) const;
    [[nodiscard]] BoolSet negate() const;
    [[nodiscard]] BoolSet conj(const BoolSet& o) const;
    [[nodiscard]] BoolSet disj(const BoolSet& o) const;

    friend bool operator==(const BoolSet&, const BoolSet&) = default;

  private:
    void normalize();
    [[nodiscard]] BoolSet combine(const BoolSet& o, bool conjunction) const;

    std::size_t n_ = 0;
    bool top_ = false;
    std::vector<std::uint64_t> vecs_;
};

std::string to_string(const BoolSet& b);

} // namespace unreal
