// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include "unreal/value.hpp"

#include <functional>
#include <limits>

namespace unreal {

std::string_view to_string(ScalarType type) { return type == ScalarType::Int ? "Int" : "Bool"; }

std::string Value::to_string() const {
    if (is_bool()) {
        return as_bool() ? "true" : "false";
    }
    return as_int().str();
}

std::string Value::to_smtlib() const {
    if (is_bool()) {
        return to_string();
    }
    if (as_int() < 0) {
        Integer magnitude = -as_int();
        return "(- " + magnitude.str() + ")";
    }
    return as_int().str();
}

bool operator<(const Value& a, const Value& b) {
    if (a.is_bool() != b.is_bool()) {
        return a.is_bool();
    }
    if (a.is_bool()) {
        return a.as_bool() < b.as_bool();
    }
    return a.as_int() < b.as_int();
}

std::size_t hash_integer(const Integer& i) {
    if (i >= std::numeric_limits<long long>::min() && i <= std::numeric_limits<long long>::max()) {
        return std::hash<long long>{}(i.convert_to<long long>());
    }
    return std::hash<std::string>{}(i.str());
}

std::size_t ValueHash::operator()(const Value& v) const {
    if (v.is_bool()) {
        return v.as_bool() ? 0x9e3779b97f4a7c15ULL : 0x7f4a7c159e3779b9ULL;
    }
    return hash_integer(v.as_int());
}

std::size_t ValueVectorHash::operator()(const ValueVector& v) const {
    std::size_t h = 0xcbf29ce484222325ULL ^ v.size();
    for (const auto& x : v) {
        h ^= ValueHash{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::string to_string(const ValueVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) {
            out += ",";
        }
        out += v[i].to_string();
    }
    return out + ")";
}

} // namespace unreal
