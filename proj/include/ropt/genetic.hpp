#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <numeric>
#include <vector>

#include <ropt/core.hpp>
#include <ropt/operators.hpp>
#include <ropt/problems.hpp>
#include <ropt/run_record.hpp>

namespace ropt {

struct GaConfig {
    std::size_t pop_size = 200;
    /// Probability that an offspring receives one neighbor move.
    double mutation_prob = 0.1;
    std::size_t max_iters = 1000;
    std::size_t max_attempts = 10;
    bool is_default = false;

    void validate() const {
        if (pop_size < 2 || pop_size % 2 != 0) throw ConfigError("GA pop_size must be even and >= 2");
        if (!(mutation_prob > 0.0 && mutation_prob < 1.0))
            throw ConfigError("GA mutation_prob must lie in (0,1)");
        if (max_iters == 0 || max_attempts == 0)
            throw ConfigError("GA needs positive max_iters and max_attempts");
        if (max_attempts > max_iters) throw ConfigError("GA max_attempts exceeds max_iters");
    }
};

/// Roulette-wheel sampler. When some fitness is non-positive every weight is
/// shifted to f - min + 1 so the worst member keeps a small chance.
class RouletteWheel {
public:
    explicit RouletteWheel(std::span<const double> fitness) : cumulative_(fitness.size()) {
        if (fitness.empty()) return;
        const double lo = *std::min_element(fitness.begin(), fitness.end());
        const double shift = lo <= 0.0 ? 1.0 - lo : 0.0;
        double acc = 0.0;
        for (std::size_t i = 0; i < fitness.size(); ++i) {
            acc += fitness[i] + shift;
            cumulative_[i] = acc;
        }
    }

    [[nodiscard]] double weight(std::size_t i) const noexcept {
        return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
    }
    [[nodiscard]] double total() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

    std::size_t pick(Rng& rng) const noexcept {
        const double r = uniform01(rng) * total();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                     cumulative_.size() - 1);
    }

private:
    std::vector<double> cumulative_;
};

/// Genetic algorithm.
///
/// Each generation draws pop_size offspring: two parents by roulette wheel,
/// crossover, then with probability mutation_prob one neighbor move (a bit
/// flip or a swap). The offspring replace the least-fit members: the next
/// population is the best pop_size of parents and offspring together (parents
/// win ties), so the best member is never lost. One generation is one
/// iteration; the run stops after max_attempts generations without a new best
/// or max_iters generations.
template <FitnessProblem P>
RunRecord ga(const P& problem, const GaConfig& cfg, Rng& rng) {
    using S = typename P::state_type;
    cfg.validate();
    EvalCounter counter;
    Evaluator<P> eval(problem, counter);
    BestTracker<S> tracker;

    std::vector<S> pop;
    std::vector<double> fit;
    pop.reserve(2 * cfg.pop_size);
    fit.reserve(2 * cfg.pop_size);
    for (std::size_t i = 0; i < cfg.pop_size; ++i) {
        pop.push_back(random_state(problem, rng));
        fit.push_back(eval(pop.back()));
        tracker.offer(pop.back(), fit.back());
    }
    tracker.start();

    std::vector<std::size_t> rank;
    std::vector<S> survivors;
    std::vector<double> survivor_fit;
    std::size_t attempts = 0;
    for (std::size_t gen = 0; gen < cfg.max_iters && attempts < cfg.max_attempts; ++gen) {
        const RouletteWheel wheel(fit);
        bool improved = false;
        for (std::size_t k = 0; k < cfg.pop_size; ++k) {
            const auto& a = pop[wheel.pick(rng)];
            const auto& b = pop[wheel.pick(rng)];
            S child = crossover(a, b, rng);
            if (bernoulli(rng, cfg.mutation_prob)) child = neighbor(child, rng);
            const double f = eval(child);
            improved |= tracker.offer(child, f);
            pop.push_back(std::move(child));
            fit.push_back(f);
        }

        rank.resize(pop.size());
        std::iota(rank.begin(), rank.end(), std::size_t{0});
        std::stable_sort(rank.begin(), rank.end(), [&](auto x, auto y) { return fit[x] > fit[y]; });
        survivors.clear();
        survivor_fit.clear();
        for (std::size_t k = 0; k < cfg.pop_size; ++k) {
            survivors.push_back(std::move(pop[rank[k]]));
            survivor_fit.push_back(fit[rank[k]]);
        }
        std::swap(pop, survivors);
        std::swap(fit, survivor_fit);

        attempts = improved ? 0 : attempts + 1;
        tracker.close_iteration();
    }

    return std::move(tracker).finish(counter.total(), &Evaluator<P>::report);
}

}  // namespace ropt
