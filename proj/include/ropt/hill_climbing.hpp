#pragma once

#include <cstddef>
#include <string>

#include <ropt/core.hpp>
#include <ropt/problems.hpp>
#include <ropt/run_record.hpp>

namespace ropt {

struct RhcConfig {
    std::size_t restarts = 0;
    std::size_t max_iters = 1000;
    std::size_t max_attempts = 10;
    bool is_default = false;

    void validate() const {
        if (max_iters == 0 || max_attempts == 0)
            throw ConfigError("RHC needs positive max_iters and max_attempts");
        if (max_attempts > max_iters) throw ConfigError("RHC max_attempts exceeds max_iters");
    }
};

/// Randomized hill climbing with random restarts.
///
/// Runs restarts+1 climbs. A climb moves to a random neighbor only on strict
/// improvement and stops after max_attempts consecutive failures or max_iters
/// steps. The curve is the best-so-far across climbs, concatenated.
template <FitnessProblem P>
RunRecord rhc(const P& problem, const RhcConfig& cfg, Rng& rng) {
    using S = typename P::state_type;
    cfg.validate();
    EvalCounter counter;
    Evaluator<P> eval(problem, counter);
    BestTracker<S> tracker;
    std::vector<std::size_t> boundaries;

    for (std::size_t climb = 0; climb <= cfg.restarts; ++climb) {
        if (climb > 0) boundaries.push_back(tracker.iterations());
        S current = random_state(problem, rng);
        double current_fit = eval(current);
        tracker.offer(current, current_fit);
        tracker.start();

        std::size_t attempts = 0, iters = 0;
        while (attempts < cfg.max_attempts && iters < cfg.max_iters) {
            S next = neighbor(current, rng);
            const double next_fit = eval(next);
            ++iters;
            if (next_fit > current_fit) {
                current = std::move(next);
                current_fit = next_fit;
                attempts = 0;
                tracker.offer(current, current_fit);
            } else {
                ++attempts;
            }
            tracker.close_iteration();
        }
    }

    auto record = std::move(tracker).finish(counter.total(), &Evaluator<P>::report);
    record.restart_boundaries = std::move(boundaries);
    return record;
}

}  // namespace ropt
