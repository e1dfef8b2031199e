// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "unreal/grammar.hpp"
#include "unreal/value.hpp"

namespace unreal::kernels {

/// Row-major product of child output vectors (last argument varies fastest)
/// under one symbol, evaluated column by column.
struct ComposeBatch {
    const RankedSymbol* symbol = nullptr;
    std::vector<std::vector<const ValueVector*>> pools;
    std::span<const ValueVector> envs;

    [[nodiscard]] std::size_t product_size() const;
    /// Child indices of product element `i`.
    [[nodiscard]] std::vector<std::size_t> unrank(std::size_t i) const;
};

/// Output vectors of product elements [begin, end) into `out`.
void compose_serial(const ComposeBatch& batch, std::size_t begin, std::size_t end, std::vector<ValueVector>& out);
void compose_parallel(const ComposeBatch& batch, std::size_t begin, std::size_t end, std::vector<ValueVector>& out);

/// Smallest index in [0, count) for which `fails` holds.
std::optional<std::size_t> first_failing_serial(std::size_t count, const std::function<bool(std::size_t)>& fails);
std::optional<std::size_t> first_failing_parallel(std::size_t count, const std::function<bool(std::size_t)>& fails);

} // namespace unreal::kernels
