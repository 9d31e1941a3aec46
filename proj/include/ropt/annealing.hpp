#pragma once

/// @file annealing.hpp
/// @brief Simulated annealing with an exponential-decay temperature schedule.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <ropt/core.hpp>
#include <ropt/problems.hpp>
#include <ropt/run_record.hpp>

namespace ropt {

/// T(t) = max(t0 * exp(-c t), min_temp). Equivalent to t0 * alpha^t with alpha = exp(-c).
struct ExponentialSchedule {
    double t0 = 1.0;
    double exp_const = 0.005;
    double min_temp = 0.001;

    [[nodiscard]] double unclamped(double t) const noexcept { return t0 * std::exp(-exp_const * t); }
    [[nodiscard]] double temperature(double t) const noexcept { return std::max(unclamped(t), min_temp); }
};

/// Probability of moving to a state whose (maximized) fitness differs by `delta`.
inline double acceptance_probability(double delta, double temperature) noexcept {
    if (delta > 0.0) return 1.0;
    return std::exp(delta / temperature);
}

inline bool accept_move(double delta, double temperature, Rng& rng) noexcept {
    if (delta > 0.0) return true;
    return uniform01(rng) < acceptance_probability(delta, temperature);
}

struct SaConfig {
    double t0 = 1.0;
    double exp_const = 0.005;
    double min_temp = 0.001;
    std::size_t max_iters = 1000;
    std::size_t max_attempts = 10;
    bool is_default = false;

    [[nodiscard]] ExponentialSchedule schedule() const noexcept { return {t0, exp_const, min_temp}; }

    void validate() const {
        if (!(t0 > 0.0) || !(exp_const > 0.0) || !(min_temp > 0.0))
            throw ConfigError("SA needs positive t0, exp_const and min_temp");
        if (!(min_temp < t0)) throw ConfigError("SA min_temp must be below t0");
        if (max_iters == 0 || max_attempts == 0)
            throw ConfigError("SA needs positive max_iters and max_attempts");
        if (max_attempts > max_iters) throw ConfigError("SA max_attempts exceeds max_iters");
    }
};

/// Simulated annealing. At iteration t (from 0) the temperature is
/// schedule.temperature(t); a neighbor is accepted if it improves, otherwise
/// with probability exp(delta / T). The attempt counter resets on every
/// accepted move and the run stops after max_attempts consecutive rejections
/// or max_iters iterations. The best state seen is reported.
template <FitnessProblem P>
RunRecord sa(const P& problem, const SaConfig& cfg, Rng& rng) {
    using S = typename P::state_type;
    cfg.validate();
    const auto schedule = cfg.schedule();
    EvalCounter counter;
    Evaluator<P> eval(problem, counter);
    BestTracker<S> tracker;

    S current = random_state(problem, rng);
    double current_fit = eval(current);
    tracker.offer(current, current_fit);
    tracker.start();

    std::size_t attempts = 0;
    for (std::size_t t = 0; t < cfg.max_iters && attempts < cfg.max_attempts; ++t) {
        const double temp = schedule.temperature(static_cast<double>(t));
        S next = neighbor(current, rng);
        const double next_fit = eval(next);
        if (accept_move(next_fit - current_fit, temp, rng)) {
            current = std::move(next);
            current_fit = next_fit;
            attempts = 0;
            tracker.offer(current, current_fit);
        } else {
            ++attempts;
        }
        tracker.close_iteration();
    }

    return std::move(tracker).finish(counter.total(), &Evaluator<P>::report);
}

}  // namespace ropt
