#pragma once

/// @file mimic.hpp
/// @brief MIMIC: refit a Chow-Liu dependency tree to the elite of each
/// generation and sample the next population from it.
///
/// Variables are discrete with a common arity: 2 for bitstrings, n for
/// permutations (variable i is the value at position i). Sampled permutation
/// vectors are repaired into bijections by repair_permutation().

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <ropt/core.hpp>
#include <ropt/problems.hpp>
#include <ropt/run_record.hpp>

namespace ropt {

/// One discrete sample: a value in [0, arity) per variable.
using Sample = std::vector<std::uint32_t>;

/// Dense symmetric matrix of pairwise weights.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n = 0, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

namespace detail {

/// Joint counts of (x_i, x_j), row-major by x_i.
inline std::vector<double> joint_counts(std::span<const Sample> samples, std::size_t i,
                                        std::size_t j, std::size_t arity) {
    std::vector<double> c(arity * arity, 0.0);
    for (const auto& s : samples) c[s[i] * arity + s[j]] += 1.0;
    return c;
}

/// Mutual information of a k-by-k count table after adding `pseudo` to every cell.
inline double mi_from_counts(const std::vector<double>& counts, std::size_t k, double pseudo) {
    double total = 0.0;
    std::vector<double> p(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
        p[c] = counts[c] + pseudo;
        total += p[c];
    }
    if (total <= 0.0) return 0.0;
    std::vector<double> row(k, 0.0), col(k, 0.0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            p[a * k + b] /= total;
            row[a] += p[a * k + b];
            col[b] += p[a * k + b];
        }
    double mi = 0.0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            const double pab = p[a * k + b];
            if (pab > 0.0) mi += pab * std::log(pab / (row[a] * col[b]));
        }
    return std::max(mi, 0.0);
}

/// The per-cell pseudocount for a given arity. For arity 2 this is exactly
/// `smoothing`; wider tables spread the same total mass (4 * smoothing) over
/// their k*k cells.
inline double cell_pseudocount(double smoothing, std::size_t arity) noexcept {
    return smoothing * 4.0 / static_cast<double>(arity * arity);
}

inline std::size_t categorical(std::span<const double> probs, Rng& rng) noexcept {
    double total = 0.0;
    for (double p : probs) total += p;
    double r = uniform01(rng) * total;
    for (std::size_t v = 0; v < probs.size(); ++v) {
        if (r < probs[v]) return v;
        r -= probs[v];
    }
    // rounding fallthrough: last value with positive mass
    for (std::size_t v = probs.size(); v-- > 0;)
        if (probs[v] > 0.0) return v;
    return 0;
}

}  // namespace detail

/// Mutual information (nats) between variables i and j of the samples, each
/// joint cell smoothed by `smoothing` (per cell for binary variables).
inline double mutual_information(std::span<const Sample> samples, std::size_t i, std::size_t j,
                                 double smoothing, std::size_t arity = 2) {
    if (samples.empty()) throw std::invalid_argument("mutual information needs samples");
    if (i == j) throw std::invalid_argument("mutual information needs distinct variables");
    return detail::mi_from_counts(detail::joint_counts(samples, i, j, arity), arity,
                                  detail::cell_pseudocount(smoothing, arity));
}

inline SquareMatrix mutual_information_matrix(std::span<const Sample> samples, double smoothing,
                                              std::size_t arity = 2) {
    const std::size_t n = samples.empty() ? 0 : samples.front().size();
    SquareMatrix mi(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = mutual_information(samples, i, j, smoothing, arity);
            mi(i, j) = v;
            mi(j, i) = v;
        }
    return mi;
}

/// Rooted spanning tree over the variables.
struct DependencyTree {
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    std::size_t root = 0;
    std::vector<std::size_t> parent;  // parent[root] == none
    std::vector<std::size_t> order;   // root first, every parent before its children

    [[nodiscard]] std::size_t size() const noexcept { return parent.size(); }

    [[nodiscard]] double weight(const SquareMatrix& w) const noexcept {
        double total = 0.0;
        for (std::size_t v = 0; v < parent.size(); ++v)
            if (parent[v] != none) total += w(v, parent[v]);
        return total;
    }
};

/// Maximum-weight spanning tree (Kruskal; equal weights favour the
/// lexicographically smallest edge), rooted at variable 0.
inline DependencyTree build_dependency_tree(const SquareMatrix& mi) {
    const auto n = mi.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (mi(i, j) != mi(j, i)) throw std::invalid_argument("MI matrix must be symmetric");
            if (mi(i, j) < 0.0) throw std::invalid_argument("MI matrix must be non-negative");
        }

    std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
    edges.reserve(n * (n - (n > 0)) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(mi(i, j), i, j);
    std::stable_sort(edges.begin(), edges.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });

    std::vector<std::size_t> uf(n);
    std::iota(uf.begin(), uf.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };

    std::vector<std::vector<std::size_t>> adj(n);
    std::size_t taken = 0;
    for (const auto& [w, i, j] : edges) {
        if (taken + 1 >= n) break;
        const auto ri = find(i), rj = find(j);
        if (ri == rj) continue;
        uf[ri] = rj;
        adj[i].push_back(j);
        adj[j].push_back(i);
        ++taken;
    }

    DependencyTree tree;
    tree.parent.assign(n, DependencyTree::none);
    if (n == 0) return tree;
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
        const auto v = frontier.front();
        frontier.pop();
        tree.order.push_back(v);
        auto& next = adj[v];
        std::sort(next.begin(), next.end());
        for (auto u : next)
            if (!seen[u]) {
                seen[u] = true;
                tree.parent[u] = v;
                frontier.push(u);
            }
    }
    return tree;
}

/// Tree-structured distribution: a marginal for the root and P(child | parent)
/// tables for every other variable.
struct TreeModel {
    std::size_t arity = 2;
    DependencyTree tree;
    /// marginals[v][a] = P(x_v = a)
    std::vector<std::vector<double>> marginals;
    /// conditionals[v][a * arity + b] = P(x_v = b | x_parent = a); empty for the root
    std::vector<std::vector<double>> conditionals;
};

/// Estimates the smoothed Chow-Liu model of `samples`.
inline TreeModel fit_tree_model(std::span<const Sample> samples, std::size_t arity, double smoothing) {
    if (samples.empty()) throw std::invalid_argument("cannot fit a model to no samples");
    const auto n = samples.front().size();
    const auto k = arity;
    const double pseudo = detail::cell_pseudocount(smoothing, k);
    const double total = static_cast<double>(samples.size()) + pseudo * static_cast<double>(k * k);

    TreeModel model;
    model.arity = k;
    model.tree = build_dependency_tree(mutual_information_matrix(samples, smoothing, k));

    model.marginals.assign(n, std::vector<double>(k, 0.0));
    for (const auto& s : samples)
        for (std::size_t v = 0; v < n; ++v) model.marginals[v][s[v]] += 1.0;
    for (auto& m : model.marginals)
        for (auto& p : m) p = (p + pseudo * static_cast<double>(k)) / total;

    model.conditionals.assign(n, {});
    for (std::size_t v = 0; v < n; ++v) {
        const auto par = model.tree.parent[v];
        if (par == DependencyTree::none) continue;
        auto counts = detail::joint_counts(samples, par, v, k);
        auto& table = model.conditionals[v];
        table.resize(k * k);
        for (std::size_t a = 0; a < k; ++a) {
            double row = 0.0;
            for (std::size_t b = 0; b < k; ++b) row += counts[a * k + b] + pseudo;
            for (std::size_t b = 0; b < k; ++b) table[a * k + b] = (counts[a * k + b] + pseudo) / row;
        }
    }
    return model;
}

/// Ancestral sampling: the root from its marginal, then each variable from its
/// conditional given the already-sampled parent.
inline Sample sample_from_tree(const TreeModel& model, Rng& rng) {
    const auto n = model.tree.size();
    const auto k = model.arity;
    Sample out(n, 0);
    for (auto v : model.tree.order) {
        const auto par = model.tree.parent[v];
        if (par == DependencyTree::none) {
            out[v] = static_cast<std::uint32_t>(detail::categorical(model.marginals[v], rng));
        } else {
            std::span<const double> row(model.conditionals[v].data() + out[par] * k, k);
            out[v] = static_cast<std::uint32_t>(detail::categorical(row, rng));
        }
    }
    return out;
}

/// Turns a sampled value vector into a permutation. The first occurrence of
/// each value is kept; every later duplicate, left to right, takes the unused
/// value with the highest marginal probability at its position (lowest value
/// on ties).
inline Permutation repair_permutation(const Sample& values, const TreeModel& model) {
    const auto n = values.size();
    std::vector<bool> used(n, false);
    std::vector<Permutation::value_type> order(n);
    std::vector<std::size_t> holes;
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = values[i];
        if (v < n && !used[v]) {
            used[v] = true;
            order[i] = v;
        } else {
            holes.push_back(i);
        }
    }
    for (auto i : holes) {
        std::size_t pick = n;
        double best = -1.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            const double p = model.marginals[i][v];
            if (p > best) {
                best = p;
                pick = v;
            }
        }
        used[pick] = true;
        order[i] = static_cast<Permutation::value_type>(pick);
    }
    return Permutation(std::move(order));
}

/// Indices of the `keep` fittest entries, best first (earlier index on ties).
inline std::vector<std::size_t> select_elite(std::span<const double> fitness, std::size_t keep) {
    std::vector<std::size_t> idx(fitness.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    keep = std::min(keep, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(keep), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          return fitness[a] > fitness[b] || (fitness[a] == fitness[b] && a < b);
                      });
    idx.resize(keep);
    return idx;
}

struct MimicConfig {
    std::size_t pop_size = 200;
    double keep_fraction = 0.2;
    double smoothing = 0.5;
    std::size_t max_iters = 1000;
    std::size_t max_attempts = 10;
    bool is_default = false;

    [[nodiscard]] std::size_t keep_count() const noexcept {
        return static_cast<std::size_t>(std::ceil(keep_fraction * static_cast<double>(pop_size)));
    }

    void validate() const {
        if (!(keep_fraction > 0.0 && keep_fraction < 1.0))
            throw ConfigError("MIMIC keep_fraction must lie in (0,1)");
        if (keep_count() < 2) throw ConfigError("MIMIC must retain at least two samples");
        if (!(smoothing > 0.0)) throw ConfigError("MIMIC smoothing must be positive");
        if (max_iters == 0 || max_attempts == 0)
            throw ConfigError("MIMIC needs positive max_iters and max_attempts");
        if (max_attempts > max_iters) throw ConfigError("MIMIC max_attempts exceeds max_iters");
    }
};

namespace detail {

inline Sample to_sample(const BitString& s) { return Sample(s.view().begin(), s.view().end()); }
inline Sample to_sample(const Permutation& s) { return Sample(s.view().begin(), s.view().end()); }

template <class S>
std::size_t arity_for(std::size_t n) noexcept {
    return std::is_same_v<S, BitString> ? 2 : n;
}

template <class S>
S decode(const Sample& values, const TreeModel& model) {
    if constexpr (std::is_same_v<S, BitString>) {
        BitString b(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) b.set(i, values[i] != 0);
        return b;
    } else {
        return repair_permutation(values, model);
    }
}

}  // namespace detail

/// MIMIC. Each generation retains the top ceil(keep_fraction * pop_size)
/// states, fits a smoothed tree model to them and samples pop_size - 1 new
/// states; the best state so far is carried over. Stops after max_attempts
/// generations without a new best or max_iters generations.
template <FitnessProblem P>
RunRecord mimic(const P& problem, const MimicConfig& cfg, Rng& rng) {
    using S = typename P::state_type;
    cfg.validate();
    EvalCounter counter;
    Evaluator<P> eval(problem, counter);
    BestTracker<S> tracker;
    const auto arity = detail::arity_for<S>(problem.size());

    std::vector<S> pop;
    std::vector<double> fit;
    for (std::size_t i = 0; i < cfg.pop_size; ++i) {
        pop.push_back(random_state(problem, rng));
        fit.push_back(eval(pop.back()));
        tracker.offer(pop.back(), fit.back());
    }
    tracker.start();

    std::vector<Sample> elite;
    std::size_t attempts = 0;
    for (std::size_t gen = 0; gen < cfg.max_iters && attempts < cfg.max_attempts; ++gen) {
        elite.clear();
        for (auto i : select_elite(fit, cfg.keep_count())) elite.push_back(detail::to_sample(pop[i]));
        const TreeModel model = fit_tree_model(elite, arity, cfg.smoothing);

        std::vector<S> next_pop{tracker.best_state()};
        std::vector<double> next_fit{tracker.best()};
        bool improved = false;
        while (next_pop.size() < cfg.pop_size) {
            S s = detail::decode<S>(sample_from_tree(model, rng), model);
            const double f = eval(s);
            improved |= tracker.offer(s, f);
            next_pop.push_back(std::move(s));
            next_fit.push_back(f);
        }
        pop = std::move(next_pop);
        fit = std::move(next_fit);

        attempts = improved ? 0 : attempts + 1;
        tracker.close_iteration();
    }

    return std::move(tracker).finish(counter.total(), &Evaluator<P>::report);
}

}  // namespace ropt
