#pragma once

/// @file core.hpp
/// @brief Genotypes, the counted evaluation boundary and the seeded RNG contract.
///
/// Every optimizer in ropt works on one of two genotypes: a BitString (binary
/// problems and Knapsack) or a Permutation (TSP and Queens). Fitness is always
/// computed through evaluate(), which is the only place an EvalCounter moves.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ropt {

/// Raised when a state does not fit the problem it is scored against.
class InvalidState : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for parameter combinations that cannot describe a problem or run.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Direction { Maximize, Minimize };

enum class Representation { Bits, Permutation };

constexpr std::string_view to_string(Representation r) noexcept {
    return r == Representation::Bits ? "bits" : "permutation";
}

// ---------------------------------------------------------------------------
// Genotypes
// ---------------------------------------------------------------------------

/// Fixed-length string over {0,1}.
class BitString {
public:
    using value_type = std::uint8_t;

    BitString() = default;
    explicit BitString(std::size_t n, value_type fill = 0) : bits_(n, fill ? 1 : 0) {}

    /// Throws InvalidState if any element is not 0 or 1.
    explicit BitString(std::vector<value_type> bits) : bits_(std::move(bits)) {
        for (auto b : bits_)
            if (b > 1) throw InvalidState("BitString element must be 0 or 1");
    }

    /// Parses "0101"-style text.
    static BitString parse(std::string_view text) {
        std::vector<value_type> bits;
        bits.reserve(text.size());
        for (char c : text) {
            if (c != '0' && c != '1') throw InvalidState("BitString text must contain only 0/1");
            bits.push_back(static_cast<value_type>(c - '0'));
        }
        return BitString(std::move(bits));
    }

    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
    [[nodiscard]] value_type operator[](std::size_t i) const noexcept { return bits_[i]; }
    void set(std::size_t i, bool v) noexcept { bits_[i] = v ? 1 : 0; }
    void flip(std::size_t i) noexcept { bits_[i] ^= 1; }
    [[nodiscard]] std::span<const value_type> view() const noexcept { return bits_; }

    [[nodiscard]] std::size_t count_ones() const noexcept {
        return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), value_type{1}));
    }

    [[nodiscard]] std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<value_type> bits_;
};

/// A bijection on {0, ..., n-1}.
class Permutation {
public:
    using value_type = std::uint32_t;

    Permutation() = default;

    /// Identity permutation of length n.
    explicit Permutation(std::size_t n) : order_(n) {
        std::iota(order_.begin(), order_.end(), value_type{0});
    }

    /// Throws InvalidState unless `order` is a bijection.
    explicit Permutation(std::vector<value_type> order) : order_(std::move(order)) {
        if (!is_valid(order_)) throw InvalidState("sequence is not a permutation of 0..n-1");
    }

    static Permutation of(std::initializer_list<value_type> values) {
        return Permutation(std::vector<value_type>(values));
    }

    static bool is_valid(std::span<const value_type> order) {
        std::vector<bool> seen(order.size(), false);
        for (auto v : order) {
            if (v >= order.size() || seen[v]) return false;
            seen[v] = true;
        }
        return true;
    }

    [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
    [[nodiscard]] value_type operator[](std::size_t i) const noexcept { return order_[i]; }
    void swap(std::size_t i, std::size_t j) noexcept { std::swap(order_[i], order_[j]); }
    [[nodiscard]] std::span<const value_type> view() const noexcept { return order_; }

    [[nodiscard]] std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < order_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(order_[i]);
        }
        return s + "]";
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<value_type> order_;
};

/// Either genotype, used where the problem is only known at runtime.
using AnyState = std::variant<BitString, Permutation>;

inline std::string to_string(const AnyState& s) {
    return std::visit([](const auto& v) { return v.to_string(); }, s);
}

template <class S>
inline constexpr Representation representation_of =
    std::is_same_v<S, BitString> ? Representation::Bits : Representation::Permutation;

// ---------------------------------------------------------------------------
// Evaluation accounting
// ---------------------------------------------------------------------------

/// Number of fitness-function calls made during one run.
class EvalCounter {
public:
    void increment() noexcept { ++total_; }
    [[nodiscard]] std::uint64_t total() const noexcept { return total_; }

private:
    std::uint64_t total_ = 0;
};

/// What every benchmark problem provides to the optimizers.
template <class P>
concept FitnessProblem = requires(const P& p, const typename P::state_type& s) {
    typename P::state_type;
    { p.size() } -> std::convertible_to<std::size_t>;
    { p.fitness(s) } -> std::convertible_to<double>;
    { P::direction } -> std::convertible_to<Direction>;
};

/// Scores `state` under `problem` and counts the call.
/// Throws InvalidState on a length mismatch or a non-finite score.
template <FitnessProblem P>
double evaluate(const P& problem, const typename P::state_type& state, EvalCounter& counter) {
    if (state.size() != problem.size())
        throw InvalidState("state length " + std::to_string(state.size()) +
                           " does not match problem size " + std::to_string(problem.size()));
    const double f = problem.fitness(state);
    counter.increment();
    if (!std::isfinite(f)) throw InvalidState("fitness is not finite");
    return f;
}

/// Runtime-typed overload: also rejects a state of the wrong genotype.
template <FitnessProblem P>
double evaluate(const P& problem, const AnyState& state, EvalCounter& counter) {
    using S = typename P::state_type;
    const auto* typed = std::get_if<S>(&state);
    if (typed == nullptr)
        throw InvalidState(std::string("problem expects a ") +
                           std::string(to_string(representation_of<S>)) + " state");
    return evaluate(problem, *typed, counter);
}

/// Optimizers always maximize. Minimization problems are negated on the way
/// in and restored with `report` on the way out.
template <FitnessProblem P>
class Evaluator {
public:
    using state_type = typename P::state_type;

    Evaluator(const P& problem, EvalCounter& counter) : problem_(&problem), counter_(&counter) {}

    double operator()(const state_type& s) const {
        const double f = evaluate(*problem_, s, *counter_);
        return P::direction == Direction::Minimize ? -f : f;
    }

    static double report(double internal) noexcept {
        return P::direction == Direction::Minimize ? -internal : internal;
    }

    [[nodiscard]] const P& problem() const noexcept { return *problem_; }
    [[nodiscard]] std::uint64_t evaluations() const noexcept { return counter_->total(); }

private:
    const P* problem_;
    EvalCounter* counter_;
};

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// 64-bit FNV-1a, used to turn canonical keys into seeds.
constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
};

constexpr std::uint64_t derive_seed(const SeedSpec& s) noexcept {
    return splitmix64(splitmix64(s.master_seed) ^ splitmix64(~s.trial_index));
}

inline Rng derive_trial_rng(const SeedSpec& s) { return Rng(derive_seed(s)); }

// The <random> distributions are implementation-defined; these are not, so a
// seed reproduces the same run on every standard library.

/// Uniform real in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) via Lemire's multiply-and-reject.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(rng()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

inline bool bernoulli(Rng& rng, double p) noexcept { return uniform01(rng) < p; }

/// Fisher-Yates shuffle.
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

template <class S>
S random_state(std::size_t n, Rng& rng);

template <>
inline BitString random_state<BitString>(std::size_t n, Rng& rng) {
    BitString s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, (rng() >> 63) != 0);
    return s;
}

template <>
inline Permutation random_state<Permutation>(std::size_t n, Rng& rng) {
    std::vector<Permutation::value_type> order(n);
    std::iota(order.begin(), order.end(), Permutation::value_type{0});
    shuffle(order, rng);
    return Permutation(std::move(order));
}

template <FitnessProblem P>
typename P::state_type random_state(const P& problem, Rng& rng) {
    return random_state<typename P::state_type>(problem.size(), rng);
}

}  // namespace ropt
