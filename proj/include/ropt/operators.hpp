#pragma once

/// @file operators.hpp
/// @brief Recombination for both genotypes.

#include <cstddef>
#include <vector>

#include <ropt/core.hpp>

namespace ropt {

/// Single-point crossover: the first `point` genes come from `first`, the rest
/// from `second`. `point` is clamped to [0, n].
inline BitString single_point_crossover(const BitString& first, const BitString& second,
                                        std::size_t point) {
    const auto n = first.size();
    if (second.size() != n) throw InvalidState("crossover parents differ in length");
    point = std::min(point, n);
    BitString child(n);
    for (std::size_t i = 0; i < n; ++i) child.set(i, i < point ? first[i] : second[i]);
    return child;
}

/// Ordered crossover (OX1). The segment [lo, hi] is copied from `first`; the
/// remaining positions are filled, starting after `hi` and wrapping, with the
/// genes of `second` in the order they appear after `hi`.
inline Permutation ordered_crossover(const Permutation& first, const Permutation& second,
                                     std::size_t lo, std::size_t hi) {
    const auto n = first.size();
    if (second.size() != n) throw InvalidState("crossover parents differ in length");
    if (n == 0) return first;
    if (lo > hi) std::swap(lo, hi);
    hi = std::min(hi, n - 1);

    std::vector<Permutation::value_type> child(n);
    std::vector<bool> used(n, false);
    for (std::size_t i = lo; i <= hi; ++i) {
        child[i] = first[i];
        used[first[i]] = true;
    }
    std::size_t pos = (hi + 1) % n;
    for (std::size_t k = 0; k < n; ++k) {
        const auto gene = second[(hi + 1 + k) % n];
        if (used[gene]) continue;
        child[pos] = gene;
        used[gene] = true;
        pos = (pos + 1) % n;
    }
    return Permutation(std::move(child));
}

/// Crossover with a uniformly drawn locus in [1, n-1].
inline BitString crossover(const BitString& a, const BitString& b, Rng& rng) {
    if (a.size() < 2) return a;
    const auto point = 1 + static_cast<std::size_t>(uniform_below(rng, a.size() - 1));
    return single_point_crossover(a, b, point);
}

inline Permutation crossover(const Permutation& a, const Permutation& b, Rng& rng) {
    if (a.size() < 2) return a;
    const auto lo = static_cast<std::size_t>(uniform_below(rng, a.size()));
    const auto hi = static_cast<std::size_t>(uniform_below(rng, a.size()));
    return ordered_crossover(a, b, lo, hi);
}

}  // namespace ropt
