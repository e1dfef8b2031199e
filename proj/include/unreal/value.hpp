// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace unreal {

using Integer = boost::multiprecision::cpp_int;

enum class ScalarType { Int, Bool };

std::string_view to_string(ScalarType type);

/// A runtime value flowing through terms, programs and specifications.
class Value {
  public:
    Value() : repr_(Integer{0}) {}
    explicit Value(Integer i) : repr_(std::move(i)) {}
    explicit Value(bool b) : repr_(b) {}
    explicit Value(long long i) : repr_(Integer{i}) {}

    static Value of_int(Integer i) { return Value(std::move(i)); }
    static Value of_bool(bool b) { return Value(b); }

    [[nodiscard]] bool is_int() const { return std::holds_alternative<Integer>(repr_); }
    [[nodiscard]] bool is_bool() const { return std::holds_alternative<bool>(repr_); }
    [[nodiscard]] ScalarType type() const { return is_int() ? ScalarType::Int : ScalarType::Bool; }

    [[nodiscard]] const Integer& as_int() const { return std::get<Integer>(repr_); }
    [[nodiscard]] bool as_bool() const { return std::get<bool>(repr_); }

    [[nodiscard]] std::string to_string() const;
    /// SMT-LIB rendering: negative integers become `(- n)`.
    [[nodiscard]] std::string to_smtlib() const;

    friend bool operator==(const Value&, const Value&) = default;
    friend bool operator<(const Value& a, const Value& b);

  private:
    std::variant<Integer, bool> repr_;
};

std::size_t hash_integer(const Integer& i);

struct ValueHash {
    std::size_t operator()(const Value& v) const;
};

using ValueVector = std::vector<Value>;

struct ValueVectorHash {
    std::size_t operator()(const ValueVector& v) const;
};

std::string to_string(const ValueVector& v);

} // namespace unreal
