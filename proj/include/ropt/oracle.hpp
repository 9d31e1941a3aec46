#pragma once

/// @file oracle.hpp
/// @brief Exact optima by exhaustive search or dynamic programming.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <ropt/core.hpp>
#include <ropt/problems.hpp>

namespace ropt {

template <class S>
struct Optimum {
    double value = 0.0;
    S state;
};

namespace detail {

template <FitnessProblem P>
bool better(double a, double b) noexcept {
    return P::direction == Direction::Maximize ? a > b : a < b;
}

}  // namespace detail

/// Scans all 2^n strings from 1...1 down to 0...0; the first optimum found
/// (the lexicographically greatest) is returned.
template <FitnessProblem P>
    requires std::same_as<typename P::state_type, BitString>
Optimum<BitString> exhaustive_bits(const P& problem) {
    const auto n = problem.size();
    if (n >= 63) throw ConfigError("bitstring too long for exhaustive search");
    Optimum<BitString> best{0.0, BitString(n)};
    bool first = true;
    BitString x(n);
    for (std::uint64_t v = (std::uint64_t{1} << n); v-- > 0;) {
        for (std::size_t i = 0; i < n; ++i) x.set(i, (v >> (n - 1 - i)) & 1U);
        const double f = problem.fitness(x);
        if (first || detail::better<P>(f, best.value)) {
            best = {f, x};
            first = false;
        }
    }
    return best;
}

/// Scans permutations in lexicographic order; with `fix_first` only those
/// starting at 0 (enough for closed tours).
template <FitnessProblem P>
    requires std::same_as<typename P::state_type, Permutation>
Optimum<Permutation> exhaustive_permutations(const P& problem, bool fix_first = false) {
    const auto n = problem.size();
    std::vector<Permutation::value_type> order(n);
    std::iota(order.begin(), order.end(), Permutation::value_type{0});
    Optimum<Permutation> best{0.0, Permutation(n)};
    bool first = true;
    const auto begin = order.begin() + (fix_first && n > 0 ? 1 : 0);
    do {
        Permutation p(order);
        const double f = problem.fitness(p);
        if (first || detail::better<P>(f, best.value)) {
            best = {f, std::move(p)};
            first = false;
        }
    } while (std::next_permutation(begin, order.end()));
    return best;
}

/// 0/1 knapsack by dynamic programming over capacity, O(n W).
inline Optimum<BitString> knapsack_dp(const KnapsackInstance& inst) {
    const auto n = inst.size();
    const auto cap = static_cast<std::size_t>(std::max<std::int64_t>(inst.capacity, 0));
    // table[i][w]: best value using items < i within weight w
    std::vector<std::vector<std::int64_t>> table(n + 1, std::vector<std::int64_t>(cap + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto wi = static_cast<std::size_t>(inst.weights[i]);
        for (std::size_t w = 0; w <= cap; ++w) {
            table[i + 1][w] = table[i][w];
            if (wi <= w) table[i + 1][w] = std::max(table[i + 1][w], table[i][w - wi] + inst.values[i]);
        }
    }
    BitString pick(n);
    std::size_t w = cap;
    for (std::size_t i = n; i-- > 0;) {
        if (table[i + 1][w] != table[i][w]) {
            pick.set(i, true);
            w -= static_cast<std::size_t>(inst.weights[i]);
        }
    }
    return {static_cast<double>(table[n][cap]), std::move(pick)};
}

}  // namespace ropt
