#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <ropt/core.hpp>

namespace ropt {

/// Outcome of one optimizer run. Fitness values are in the problem's own
/// direction (tour length for TSP), never the internal maximized form.
struct RunRecord {
    std::string problem_id;
    std::string algorithm_id;
    std::string params;
    std::uint64_t trial_index = 0;

    double best_fitness = 0.0;
    AnyState best_state;
    /// Iteration at which best_fitness was first reached; 0 means the initial state.
    std::size_t convergence_iteration = 0;
    std::uint64_t total_fitness_evals = 0;
    double wall_clock_s = 0.0;
    /// Best-so-far after each iteration (one entry per iteration).
    std::vector<double> curve;
    /// Curve indices at which a fresh RHC climb starts (empty for other algorithms).
    std::vector<std::size_t> restart_boundaries;
};

/// Running best-so-far bookkeeping shared by the optimizers. Works on the
/// internal (maximized) fitness.
template <class S>
class BestTracker {
public:
    /// Returns true on a strict improvement of the best-so-far.
    bool offer(const S& state, double fitness) {
        if (has_best_ && fitness <= best_) return false;
        has_best_ = true;
        best_ = fitness;
        best_state_ = state;
        convergence_ = started_ ? iteration_ + 1 : 0;
        return true;
    }

    /// Ends the current iteration and appends the best-so-far to the curve.
    void close_iteration() {
        ++iteration_;
        curve_.push_back(best_);
    }

    /// Improvements offered before this call (initialization) count as
    /// iteration 0; later ones belong to the iteration about to close.
    void start() noexcept { started_ = true; }

    [[nodiscard]] double best() const noexcept { return best_; }
    [[nodiscard]] const S& best_state() const noexcept { return best_state_; }
    [[nodiscard]] std::size_t iterations() const noexcept { return iteration_; }

    template <class Report>
    RunRecord finish(std::uint64_t evals, Report report) && {
        RunRecord r;
        r.best_fitness = report(best_);
        r.best_state = std::move(best_state_);
        r.convergence_iteration = convergence_;
        r.total_fitness_evals = evals;
        r.curve.reserve(curve_.size());
        for (double v : curve_) r.curve.push_back(report(v));
        return r;
    }

private:
    bool has_best_ = false;
    bool started_ = false;
    double best_ = -std::numeric_limits<double>::infinity();
    S best_state_{};
    std::size_t iteration_ = 0;
    std::size_t convergence_ = 0;
    std::vector<double> curve_;
};

}  // namespace ropt
