#pragma once

/// @file problems.hpp
/// @brief The eight benchmark landscapes, their neighborhoods and instance generators.

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <ropt/core.hpp>

namespace ropt {

// ---------------------------------------------------------------------------
// Run-length helpers shared by the peaks family
// ---------------------------------------------------------------------------

namespace runs {

inline std::size_t head(const BitString& x, std::uint8_t bit) noexcept {
    std::size_t k = 0;
    while (k < x.size() && x[k] == bit) ++k;
    return k;
}

inline std::size_t tail(const BitString& x, std::uint8_t bit) noexcept {
    std::size_t k = 0;
    while (k < x.size() && x[x.size() - 1 - k] == bit) ++k;
    return k;
}

inline std::size_t longest(const BitString& x, std::uint8_t bit) noexcept {
    std::size_t best = 0, cur = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cur = x[i] == bit ? cur + 1 : 0;
        best = std::max(best, cur);
    }
    return best;
}

}  // namespace runs

struct PeaksParams {
    std::size_t n = 50;
    std::size_t threshold = 5;

    /// Threshold defaults to ceil(0.1 n).
    static PeaksParams with_default_threshold(std::size_t n) {
        return {n, static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(n)))};
    }

    void validate() const {
        if (!(threshold > 0 && threshold < n))
            throw ConfigError("peaks threshold must satisfy 0 < T < n (n=" + std::to_string(n) +
                              ", T=" + std::to_string(threshold) + ")");
    }
};

// ---------------------------------------------------------------------------
// Binary problems
// ---------------------------------------------------------------------------

struct OneMax {
    using state_type = BitString;
    static constexpr Direction direction = Direction::Maximize;
    std::size_t n = 50;

    [[nodiscard]] std::size_t size() const noexcept { return n; }
    [[nodiscard]] double fitness(const BitString& x) const noexcept {
        return static_cast<double>(x.count_ones());
    }
    [[nodiscard]] double optimum() const noexcept { return static_cast<double>(n); }
};

struct FlipFlop {
    using state_type = BitString;
    static constexpr Direction direction = Direction::Maximize;
    std::size_t n = 50;

    [[nodiscard]] std::size_t size() const noexcept { return n; }
    [[nodiscard]] double fitness(const BitString& x) const noexcept {
        std::size_t changes = 0;
        for (std::size_t i = 1; i < x.size(); ++i) changes += x[i] != x[i - 1];
        return static_cast<double>(changes);
    }
    [[nodiscard]] double optimum() const noexcept { return n == 0 ? 0.0 : static_cast<double>(n - 1); }
};

/// max(leading ones, trailing zeros), plus n when both exceed T.
struct FourPeaks {
    using state_type = BitString;
    static constexpr Direction direction = Direction::Maximize;
    PeaksParams params;

    [[nodiscard]] std::size_t size() const noexcept { return params.n; }
    [[nodiscard]] double fitness(const BitString& x) const noexcept {
        const auto h1 = runs::head(x, 1);
        const auto t0 = runs::tail(x, 0);
        const auto t = params.threshold;
        const std::size_t bonus = (h1 > t && t0 > t) ? params.n : 0;
        return static_cast<double>(std::max(h1, t0) + bonus);
    }
    [[nodiscard]] double optimum() const noexcept {
        return static_cast<double>(2 * params.n - params.threshold - 1);
    }
};

/// FourPeaks with the bonus also granted to leading-zeros/trailing-ones strings.
struct SixPeaks {
    using state_type = BitString;
    static constexpr Direction direction = Direction::Maximize;
    PeaksParams params;

    [[nodiscard]] std::size_t size() const noexcept { return params.n; }
    [[nodiscard]] double fitness(const BitString& x) const noexcept {
        const auto h1 = runs::head(x, 1), t0 = runs::tail(x, 0);
        const auto h0 = runs::head(x, 0), t1 = runs::tail(x, 1);
        const auto t = params.threshold;
        const bool peak = (h1 > t && t0 > t) || (h0 > t && t1 > t);
        return static_cast<double>(std::max(h1, t0) + (peak ? params.n : 0));
    }
    [[nodiscard]] double optimum() const noexcept {
        return static_cast<double>(2 * params.n - params.threshold - 1);
    }
};

/// Longest run of either symbol anywhere, plus n when both longest runs exceed T.
struct ContinuousPeaks {
    using state_type = BitString;
    static constexpr Direction direction = Direction::Maximize;
    PeaksParams params;

    [[nodiscard]] std::size_t size() const noexcept { return params.n; }
    [[nodiscard]] double fitness(const BitString& x) const noexcept {
        const auto r0 = runs::longest(x, 0), r1 = runs::longest(x, 1);
        const auto t = params.threshold;
        return static_cast<double>(std::max(r0, r1) + ((r0 > t && r1 > t) ? params.n : 0));
    }
    [[nodiscard]] double optimum() const noexcept {
        return static_cast<double>(2 * params.n - params.threshold - 1);
    }
};

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Symmetric Euclidean TSP over points in the unit square.
class TspInstance {
public:
    TspInstance(std::vector<Point> coords, std::uint64_t seed = 0)
        : coords_(std::move(coords)), seed_(seed), dist_(coords_.size() * coords_.size(), 0.0) {
        const auto n = coords_.size();
        if (n < 3) throw ConfigError("TSP needs at least 3 cities");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = std::hypot(coords_[i].x - coords_[j].x, coords_[i].y - coords_[j].y);
                dist_[i * n + j] = d;
                dist_[j * n + i] = d;
            }
    }

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] double distance(std::size_t i, std::size_t j) const noexcept {
        return dist_[i * coords_.size() + j];
    }
    [[nodiscard]] const std::vector<Point>& coords() const noexcept { return coords_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    friend bool operator==(const TspInstance& a, const TspInstance& b) {
        return a.coords_ == b.coords_ && a.seed_ == b.seed_;
    }

private:
    std::vector<Point> coords_;
    std::uint64_t seed_;
    std::vector<double> dist_;
};

/// 0/1 knapsack: values, weights and a capacity, all positive integers.
struct KnapsackInstance {
    std::vector<std::int64_t> values;
    std::vector<std::int64_t> weights;
    std::int64_t capacity = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }

    void validate() const {
        if (values.empty() || values.size() != weights.size())
            throw ConfigError("knapsack needs equally many values and weights (at least one)");
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] <= 0 || weights[i] <= 0)
                throw ConfigError("knapsack values and weights must be positive");
        if (capacity < *std::min_element(weights.begin(), weights.end()))
            throw ConfigError("knapsack capacity must admit at least one item");
    }

    friend bool operator==(const KnapsackInstance&, const KnapsackInstance&) = default;
};

/// Cities i.i.d. uniform in [0,1]^2.
inline TspInstance generate_tsp(std::size_t n, Rng& rng, std::uint64_t seed_tag = 0) {
    if (n < 3) throw ConfigError("TSP needs at least 3 cities");
    std::vector<Point> coords(n);
    for (auto& p : coords) {
        p.x = uniform01(rng);
        p.y = uniform01(rng);
    }
    return TspInstance(std::move(coords), seed_tag);
}

inline TspInstance generate_tsp(std::size_t n, std::uint64_t seed) {
    Rng rng(splitmix64(seed));
    return generate_tsp(n, rng, seed);
}

/// Values and weights i.i.d. uniform on [1,20]; capacity ceil(0.35 * sum of weights).
inline KnapsackInstance generate_knapsack(std::size_t n, Rng& rng, std::uint64_t seed_tag = 0) {
    if (n < 1) throw ConfigError("knapsack needs at least one item");
    KnapsackInstance k;
    k.seed = seed_tag;
    k.values.resize(n);
    k.weights.resize(n);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        k.values[i] = 1 + static_cast<std::int64_t>(uniform_below(rng, 20));
        k.weights[i] = 1 + static_cast<std::int64_t>(uniform_below(rng, 20));
        total += k.weights[i];
    }
    // ceil(0.35 * total) in exact integer arithmetic
    k.capacity = (35 * total + 99) / 100;
    return k;
}

inline KnapsackInstance generate_knapsack(std::size_t n, std::uint64_t seed) {
    Rng rng(splitmix64(seed));
    return generate_knapsack(n, rng, seed);
}

// ---------------------------------------------------------------------------
// Permutation and combinatorial problems
// ---------------------------------------------------------------------------

struct Tsp {
    using state_type = Permutation;
    static constexpr Direction direction = Direction::Minimize;
    std::shared_ptr<const TspInstance> instance;

    explicit Tsp(std::shared_ptr<const TspInstance> inst) : instance(std::move(inst)) {}
    explicit Tsp(TspInstance inst) : instance(std::make_shared<const TspInstance>(std::move(inst))) {}

    [[nodiscard]] std::size_t size() const noexcept { return instance->size(); }

    /// Closed tour length.
    [[nodiscard]] double fitness(const Permutation& tour) const noexcept {
        const auto n = tour.size();
        double len = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) len += instance->distance(tour[i], tour[i + 1]);
        if (n > 1) len += instance->distance(tour[n - 1], tour[0]);
        return len;
    }
};

/// Board where position i holds the row of the queen in column i.
/// Scored as C(n,2) minus attacking pairs, so the optimum is C(n,2).
struct Queens {
    using state_type = Permutation;
    static constexpr Direction direction = Direction::Maximize;
    std::size_t n = 15;

    [[nodiscard]] std::size_t size() const noexcept { return n; }

    [[nodiscard]] static std::size_t attacking_pairs(const Permutation& q) noexcept {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j) {
                const auto dr = q[i] > q[j] ? q[i] - q[j] : q[j] - q[i];
                if (dr == 0 || dr == j - i) ++hits;
            }
        return hits;
    }

    [[nodiscard]] double fitness(const Permutation& q) const noexcept {
        return optimum() - static_cast<double>(attacking_pairs(q));
    }
    [[nodiscard]] double optimum() const noexcept { return static_cast<double>(n * (n - 1) / 2); }

    void validate() const {
        if (n < 4) throw ConfigError("Queens needs n >= 4");
    }
};

/// Total value of the selection, or 0 when it exceeds the capacity.
struct Knapsack {
    using state_type = BitString;
    static constexpr Direction direction = Direction::Maximize;
    std::shared_ptr<const KnapsackInstance> instance;

    explicit Knapsack(std::shared_ptr<const KnapsackInstance> inst) : instance(std::move(inst)) {}
    explicit Knapsack(KnapsackInstance inst)
        : instance(std::make_shared<const KnapsackInstance>(std::move(inst))) {}

    [[nodiscard]] std::size_t size() const noexcept { return instance->size(); }

    [[nodiscard]] double fitness(const BitString& x) const noexcept {
        std::int64_t value = 0, weight = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i]) {
                value += instance->values[i];
                weight += instance->weights[i];
            }
        return weight <= instance->capacity ? static_cast<double>(value) : 0.0;
    }
};

// ---------------------------------------------------------------------------
// Neighborhoods
// ---------------------------------------------------------------------------

/// Flip one uniformly chosen bit.
inline BitString neighbor(const BitString& s, Rng& rng) {
    BitString out = s;
    if (out.size() > 0) out.flip(static_cast<std::size_t>(uniform_below(rng, out.size())));
    return out;
}

/// Swap two distinct uniformly chosen positions.
inline Permutation neighbor(const Permutation& s, Rng& rng) {
    Permutation out = s;
    const auto n = out.size();
    if (n < 2) return out;
    const auto i = static_cast<std::size_t>(uniform_below(rng, n));
    auto j = static_cast<std::size_t>(uniform_below(rng, n - 1));
    if (j >= i) ++j;
    out.swap(i, j);
    return out;
}

}  // namespace ropt
