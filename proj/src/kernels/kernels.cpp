// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include "unreal/kernels.hpp"

#include <atomic>
#include <limits>

#include "unreal/terms.hpp"

namespace unreal::kernels {

namespace {

ValueVector compose_one(const ComposeBatch& batch, std::span<const std::size_t> idx) {
    const std::size_t arity = batch.pools.size();
    const std::size_t cols = batch.envs.size();
    ValueVector out;
    out.reserve(cols);
    std::vector<Value> args(arity);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t a = 0; a < arity; ++a) args[a] = (*batch.pools[a][idx[a]])[c];
        out.push_back(apply_symbol(*batch.symbol, args, batch.envs[c]));
    }
    return out;
}

} // namespace

std::size_t ComposeBatch::product_size() const {
    std::size_t total = 1;
    for (const auto& p : pools) total *= p.size();
    return total;
}

std::vector<std::size_t> ComposeBatch::unrank(std::size_t i) const {
    std::vector<std::size_t> idx(pools.size());
    for (std::size_t a = pools.size(); a-- > 0;) {
        idx[a] = i % pools[a].size();
        i /= pools[a].size();
    }
    return idx;
}

void compose_serial(const ComposeBatch& batch, std::size_t begin, std::size_t end, std::vector<ValueVector>& out) {
    out.resize(end - begin);
    for (std::size_t i = begin; i < end; ++i) out[i - begin] = compose_one(batch, batch.unrank(i));
}

void compose_parallel(const ComposeBatch& batch, std::size_t begin, std::size_t end, std::vector<ValueVector>& out) {
    out.resize(end - begin);
    const auto n = static_cast<std::ptrdiff_t>(end - begin);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(i);
        out[j] = compose_one(batch, batch.unrank(begin + j));
    }
}

std::optional<std::size_t> first_failing_serial(std::size_t count, const std::function<bool(std::size_t)>& fails) {
    for (std::size_t i = 0; i < count; ++i) {
        if (fails(i)) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> first_failing_parallel(std::size_t count, const std::function<bool(std::size_t)>& fails) {
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(i);
        if (j >= best.load(std::memory_order_relaxed)) continue;
        if (fails(j)) {
            std::size_t cur = best.load();
            while (j < cur && !best.compare_exchange_weak(cur, j)) {
            }
        }
    }
    const std::size_t b = best.load();
    if (b == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    return b;
}

} // namespace unreal::kernels
