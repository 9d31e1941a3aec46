#pragma once

// Straight-from-definition scorers used as independent oracles. They work on
// plain vectors and share no code with the library.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace reference {

using Bits = std::vector<int>;

inline Bits bits_of(std::uint64_t v, std::size_t n) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<int>((v >> (n - 1 - i)) & 1U);
    return b;
}

inline std::string text(const Bits& b) {
    std::string s;
    for (int x : b) s += x ? '1' : '0';
    return s;
}

inline double onemax(const Bits& x) {
    double s = 0;
    for (int v : x) s += v;
    return s;
}

inline double flipflop(const Bits& x) {
    double s = 0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i] != x[i - 1] ? 1 : 0;
    return s;
}

inline std::size_t leading(const Bits& x, int bit) {
    std::size_t k = 0;
    while (k < x.size() && x[k] == bit) ++k;
    return k;
}

inline std::size_t trailing(const Bits& x, int bit) {
    std::size_t k = 0;
    while (k < x.size() && x[x.size() - 1 - k] == bit) ++k;
    return k;
}

inline std::size_t longest_run(const Bits& x, int bit) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t j = i;
        while (j < x.size() && x[j] == bit) ++j;
        best = std::max(best, j - i);
    }
    return best;
}

inline double four_peaks(const Bits& x, std::size_t t) {
    const auto h1 = leading(x, 1), t0 = trailing(x, 0);
    const double bonus = (h1 > t && t0 > t) ? static_cast<double>(x.size()) : 0.0;
    return static_cast<double>(std::max(h1, t0)) + bonus;
}

inline double six_peaks(const Bits& x, std::size_t t) {
    const auto h1 = leading(x, 1), t0 = trailing(x, 0), h0 = leading(x, 0), t1 = trailing(x, 1);
    const bool bonus = (h1 > t && t0 > t) || (h0 > t && t1 > t);
    return static_cast<double>(std::max(h1, t0)) + (bonus ? static_cast<double>(x.size()) : 0.0);
}

inline double continuous_peaks(const Bits& x, std::size_t t) {
    const auto r0 = longest_run(x, 0), r1 = longest_run(x, 1);
    const double bonus = (r0 > t && r1 > t) ? static_cast<double>(x.size()) : 0.0;
    return static_cast<double>(std::max(r0, r1)) + bonus;
}

/// Attacking pairs by enumerating all column pairs (rows or diagonals).
inline std::size_t queen_attacks(const std::vector<std::size_t>& rows) {
    std::size_t a = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const auto dr = rows[i] > rows[j] ? rows[i] - rows[j] : rows[j] - rows[i];
            if (dr == 0 || dr == j - i) ++a;
        }
    return a;
}

inline double knapsack(const Bits& x, const std::vector<std::int64_t>& v, const std::vector<std::int64_t>& w,
                       std::int64_t cap) {
    std::int64_t value = 0, weight = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) {
            value += v[i];
            weight += w[i];
        }
    return weight <= cap ? static_cast<double>(value) : 0.0;
}

inline double tour(const std::vector<std::size_t>& order, const std::vector<std::pair<double, double>>& xy) {
    double s = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& a = xy[order[i]];
        const auto& b = xy[order[(i + 1) % order.size()]];
        s += std::sqrt((a.first - b.first) * (a.first - b.first) + (a.second - b.second) * (a.second - b.second));
    }
    return s;
}

}  // namespace reference
