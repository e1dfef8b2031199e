// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "unreal/value.hpp"

namespace unreal {

using Rational = boost::multiprecision::cpp_rational;

/// Integer relation `coeffs . x = rhs`.
struct LinearRelation {
    std::vector<Integer> coeffs;
    Integer rhs;
};

/// Rational affine hull (Karr): base + span(directions). Directions are kept
/// in reduced row echelon form and the base is reduced against them, so
/// equal sets have equal representations.
class AffineSet {
  public:
    static AffineSet bottom(std::size_t n);
    static AffineSet top(std::size_t n);
    static AffineSet point(std::span<const Integer> v);

    [[nodiscard]] bool is_bottom() const { return bottom_; }
    [[nodiscard]] std::size_t dims() const { return n_; }
    [[nodiscard]] std::size_t dimension() const { return dirs_.size(); }
    [[nodiscard]] const std::vector<Rational>& base() const { return base_; }
    [[nodiscard]] const std::vector<std::vector<Rational>>& directions() const { return dirs_; }

    [[nodiscard]] bool contains(std::span<const Integer> v) const;
    /// `other` is a subset of this set.
    [[nodiscard]] bool includes(const AffineSet& other) const;

    [[nodiscard]] AffineSet join(const AffineSet& other) const;
    [[nodiscard]] AffineSet plus(const AffineSet& other) const;
    [[nodiscard]] AffineSet minus(const AffineSet& other) const;
    /// Coordinates with bit c of `mask` set come from `l`, the others from `r`.
    static AffineSet mix(std::uint64_t mask, const AffineSet& l, const AffineSet& r);

    /// Affine equalities satisfied by every member, as primitive integer rows.
    [[nodiscard]] std::vector<LinearRelation> relations() const;

    friend bool operator==(const AffineSet&, const AffineSet&) = default;

  private:
    explicit AffineSet(std::size_t n) : n_(n) {}
    void add_direction(std::vector<Rational> v);
    void reduce(std::vector<Rational>& v) const;
    void canonicalize_base();

    std::size_t n_ = 0;
    bool bottom_ = true;
    std::vector<Rational> base_;
    std::vector<std::vector<Rational>> dirs_;
    std::vector<std::size_t> pivots_;
};

/// Integer coset base + L for a lattice L in Hermite normal form.
class IntLattice {
  public:
    static IntLattice bottom(std::size_t n);
    static IntLattice top(std::size_t n);
    static IntLattice point(std::span<const Integer> v);

    [[nodiscard]] bool is_bottom() const { return bottom_; }
    [[nodiscard]] std::size_t dims() const { return n_; }
    [[nodiscard]] std::size_t rank() const { return rows_.size(); }
    [[nodiscard]] const std::vector<Integer>& base() const { return base_; }
    [[nodiscard]] const std::vector<std::vector<Integer>>& rows() const { return rows_; }
    /// Index in Z^n (product of pivots) for full rank; 0 when infinite.
    [[nodiscard]] Integer index() const;

    [[nodiscard]] bool contains(std::span<const Integer> v) const;
    [[nodiscard]] bool includes(const IntLattice& other) const;

    [[nodiscard]] IntLattice join(const IntLattice& other) const;
    [[nodiscard]] IntLattice plus(const IntLattice& other) const;
    [[nodiscard]] IntLattice minus(const IntLattice& other) const;
    static IntLattice mix(std::uint64_t mask, const IntLattice& l, const IntLattice& r);

    friend bool operator==(const IntLattice&, const IntLattice&) = default;

  private:
    explicit IntLattice(std::size_t n) : n_(n) {}
    void add_generator(std::vector<Integer> v);
    void normalize();
    [[nodiscard]] bool in_lattice(std::vector<Integer> v) const;

    std::size_t n_ = 0;
    bool bottom_ = true;
    std::vector<Integer> base_;
    std::vector<std::vector<Integer>> rows_;
    std::vector<std::size_t> pivots_;
};

std::string to_string(const LinearRelation& rel, std::span<const std::string> names);

} // namespace unreal
