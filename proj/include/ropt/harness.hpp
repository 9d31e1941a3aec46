#pragma once

/// @file harness.hpp
/// @brief Seeded multi-trial experiment runner.

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <ropt/annealing.hpp>
#include <ropt/core.hpp>
#include <ropt/genetic.hpp>
#include <ropt/hill_climbing.hpp>
#include <ropt/mimic.hpp>
#include <ropt/problem_spec.hpp>
#include <ropt/run_record.hpp>

namespace ropt {

using AlgorithmConfig = std::variant<RhcConfig, SaConfig, GaConfig, MimicConfig>;

inline constexpr std::array<std::string_view, 4> kAlgorithmNames = {"rhc", "sa", "ga", "mimic"};

namespace detail {

inline std::string shortest(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace detail

/// Upper-case label used in tables: RHC, SA, GA, MIMIC.
inline std::string algorithm_id(const AlgorithmConfig& cfg) {
    constexpr std::array<const char*, 4> ids = {"RHC", "SA", "GA", "MIMIC"};
    return ids[cfg.index()];
}

/// The swept hyperparameter as shown in the table's param column.
inline std::string param_label(const AlgorithmConfig& cfg) {
    return std::visit(
        [](const auto& c) -> std::string {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, RhcConfig>) return "Restarts=" + std::to_string(c.restarts);
            else if constexpr (std::is_same_v<C, SaConfig>) return "ExpConst=" + detail::shortest(c.exp_const);
            else return "PopSize=" + std::to_string(c.pop_size);
        },
        cfg);
}

/// Every setting that affects a run, in a fixed order. Used for seeding and cell identity.
inline std::string canonical_params(const AlgorithmConfig& cfg) {
    using detail::shortest;
    return std::visit(
        [](const auto& c) -> std::string {
            using C = std::decay_t<decltype(c)>;
            std::string s;
            if constexpr (std::is_same_v<C, RhcConfig>) {
                s = "restarts=" + std::to_string(c.restarts);
            } else if constexpr (std::is_same_v<C, SaConfig>) {
                s = "t0=" + shortest(c.t0) + ";exp_const=" + shortest(c.exp_const) +
                    ";min_temp=" + shortest(c.min_temp);
            } else if constexpr (std::is_same_v<C, GaConfig>) {
                s = "pop_size=" + std::to_string(c.pop_size) + ";mutation_prob=" + shortest(c.mutation_prob);
            } else {
                s = "pop_size=" + std::to_string(c.pop_size) + ";keep_fraction=" + shortest(c.keep_fraction) +
                    ";smoothing=" + shortest(c.smoothing);
            }
            return s + ";max_iters=" + std::to_string(c.max_iters) +
                   ";max_attempts=" + std::to_string(c.max_attempts);
        },
        cfg);
}

inline bool is_default(const AlgorithmConfig& cfg) {
    return std::visit([](const auto& c) { return c.is_default; }, cfg);
}

inline void validate(const AlgorithmConfig& cfg) {
    std::visit([](const auto& c) { c.validate(); }, cfg);
}

/// Runs one optimizer on one typed problem.
template <FitnessProblem P>
RunRecord run_optimizer(const P& problem, const AlgorithmConfig& cfg, Rng& rng) {
    return std::visit(
        [&](const auto& c) -> RunRecord {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, RhcConfig>) return rhc(problem, c, rng);
            else if constexpr (std::is_same_v<C, SaConfig>) return sa(problem, c, rng);
            else if constexpr (std::is_same_v<C, GaConfig>) return ga(problem, c, rng);
            else return mimic(problem, c, rng);
        },
        cfg);
}

struct CellSummary {
    std::string problem_id;
    std::string algorithm_id;
    std::string param;
    std::string canonical_params;
    bool is_default = false;
    double mean_best_fitness = 0.0;
    double mean_convergence_iteration = 0.0;
    double mean_wall_clock_s = 0.0;
    double mean_total_fitness_evals = 0.0;
    std::vector<RunRecord> records;

    [[nodiscard]] std::size_t trials() const noexcept { return records.size(); }
};

/// Fills the means from the per-trial records.
inline void summarize(CellSummary& s) {
    const auto n = static_cast<double>(s.records.size());
    double fit = 0.0, conv = 0.0, wall = 0.0, evals = 0.0;
    for (const auto& r : s.records) {
        fit += r.best_fitness;
        conv += static_cast<double>(r.convergence_iteration);
        wall += r.wall_clock_s;
        evals += static_cast<double>(r.total_fitness_evals);
    }
    s.mean_best_fitness = s.records.empty() ? 0.0 : fit / n;
    s.mean_convergence_iteration = s.records.empty() ? 0.0 : conv / n;
    s.mean_wall_clock_s = s.records.empty() ? 0.0 : wall / n;
    s.mean_total_fitness_evals = s.records.empty() ? 0.0 : evals / n;
}

/// Seed for a cell. `occurrence` counts earlier identical cells in the same plan.
inline std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& problem_key,
                               const AlgorithmConfig& cfg, std::size_t occurrence = 0) {
    const std::string key = problem_key + "|" + algorithm_id(cfg) + "|" + canonical_params(cfg) + "|" +
                            std::to_string(occurrence);
    return splitmix64(splitmix64(master_seed) ^ fnv1a(key));
}

/// One trial of a cell on a typed problem. Wall-clock covers only the optimizer.
template <FitnessProblem P>
RunRecord run_trial_typed(const P& problem, const AlgorithmConfig& cfg, std::uint64_t seed,
                          std::uint64_t trial) {
    Rng rng = derive_trial_rng({seed, trial});
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord r = run_optimizer(problem, cfg, rng);
    r.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.algorithm_id = algorithm_id(cfg);
    r.params = param_label(cfg);
    r.trial_index = trial;
    return r;
}

inline RunRecord run_trial(const ProblemSpec& spec, const AlgorithmConfig& cfg, std::uint64_t seed,
                           std::uint64_t trial) {
    RunRecord r = spec.visit([&](const auto& p) { return run_trial_typed(p, cfg, seed, trial); });
    r.problem_id = spec.id();
    return r;
}

inline CellSummary make_summary(const std::string& problem_id, const AlgorithmConfig& cfg,
                                std::vector<RunRecord> records) {
    CellSummary s;
    s.problem_id = problem_id;
    s.algorithm_id = algorithm_id(cfg);
    s.param = param_label(cfg);
    s.canonical_params = canonical_params(cfg);
    s.is_default = is_default(cfg);
    s.records = std::move(records);
    for (auto& r : s.records) r.problem_id = problem_id;
    summarize(s);
    return s;
}

/// Runs `trials` seeded trials of one cell on a typed problem (sequentially).
template <FitnessProblem P>
CellSummary run_cell_typed(const P& problem, const std::string& problem_id, const AlgorithmConfig& cfg,
                           std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw ConfigError("trials must be at least 1");
    validate(cfg);
    std::vector<RunRecord> records;
    for (std::size_t t = 0; t < trials; ++t) records.push_back(run_trial_typed(problem, cfg, seed, t));
    return make_summary(problem_id, cfg, std::move(records));
}

/// Same seeds as the first occurrence of this cell in a plan with `master_seed`.
inline CellSummary run_cell(const ProblemSpec& spec, const AlgorithmConfig& cfg, std::size_t trials,
                            std::uint64_t master_seed) {
    const auto seed = cell_seed(master_seed, spec.key(), cfg);
    return spec.visit([&](const auto& p) { return run_cell_typed(p, spec.id(), cfg, trials, seed); });
}

struct ExperimentPlan {
    std::vector<ProblemDescriptor> problems;
    std::vector<AlgorithmConfig> cells;
    std::size_t trials = 5;
    std::uint64_t master_seed = 0;
};

inline std::string describe_cell(const AlgorithmConfig& cfg) { return algorithm_id(cfg) + " " + param_label(cfg); }

/// Builds every problem and validates every cell. Throws ConfigError naming the culprit.
inline std::vector<ProblemSpec> validate_plan(const ExperimentPlan& plan) {
    if (plan.problems.empty()) throw ConfigError("plan has no problems");
    if (plan.cells.empty()) throw ConfigError("plan has no cells");
    if (plan.trials == 0) throw ConfigError("plan trials must be at least 1");
    std::vector<ProblemSpec> specs;
    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < plan.problems.size(); ++i) {
        const auto& d = plan.problems[i];
        try {
            specs.push_back(ProblemSpec::make(d));
        } catch (const ConfigError& e) {
            throw ConfigError("problems[" + std::to_string(i) + "] (" + d.name + "): " + e.what());
        }
        const auto [it, fresh] = ids.emplace(specs.back().id(), i);
        if (!fresh)
            throw ConfigError("problems[" + std::to_string(i) + "]: id '" + it->first +
                              "' already used by problems[" + std::to_string(it->second) + "]");
    }
    for (std::size_t j = 0; j < plan.cells.size(); ++j) {
        try {
            validate(plan.cells[j]);
        } catch (const ConfigError& e) {
            throw ConfigError("cells[" + std::to_string(j) + "] (" + describe_cell(plan.cells[j]) +
                              "): " + e.what());
        }
    }
    return specs;
}

/// Worker count from ROPT_WORKERS, else the hardware concurrency.
inline std::size_t default_workers() {
    if (const char* env = std::getenv("ROPT_WORKERS")) {
        char* end = nullptr;
        const auto v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

struct RunOptions {
    std::size_t workers = 0;  // 0 selects default_workers()
    /// Called (serialized) as each cell completes; argument is the plan-order index.
    std::function<void(std::size_t, const CellSummary&)> on_cell_done{};
};

/// Runs every (problem, cell) pair, problem-major. Output order matches plan
/// order whatever the completion order.
inline std::vector<CellSummary> run_plan(const ExperimentPlan& plan, const RunOptions& options = {}) {
    const auto specs = validate_plan(plan);

    struct Job {
        std::size_t problem;
        std::size_t cell;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (std::size_t j = 0; j < plan.cells.size(); ++j) {
            const auto key = specs[i].key() + "|" + algorithm_id(plan.cells[j]) + "|" +
                             canonical_params(plan.cells[j]);
            const auto occurrence = seen[key]++;
            jobs.push_back({i, j, cell_seed(plan.master_seed, specs[i].key(), plan.cells[j], occurrence)});
        }
    }

    const std::size_t trials = plan.trials;
    const std::size_t tasks = jobs.size() * trials;
    std::vector<std::vector<RunRecord>> records(jobs.size(), std::vector<RunRecord>(trials));
    std::vector<std::atomic<std::size_t>> remaining(jobs.size());
    for (auto& r : remaining) r.store(trials);
    std::vector<CellSummary> out(jobs.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex mu;

    auto worker = [&] {
        for (;;) {
            const auto task = next.fetch_add(1);
            if (task >= tasks || failed.load()) return;
            const auto& job = jobs[task / trials];
            const auto trial = task % trials;
            try {
                records[task / trials][trial] =
                    run_trial(specs[job.problem], plan.cells[job.cell], job.seed, trial);
                if (remaining[task / trials].fetch_sub(1) == 1) {
                    auto s = make_summary(specs[job.problem].id(), plan.cells[job.cell],
                                          std::move(records[task / trials]));
                    std::lock_guard lock(mu);
                    out[task / trials] = std::move(s);
                    if (options.on_cell_done) options.on_cell_done(task / trials, out[task / trials]);
                }
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    const auto n_workers = std::min(options.workers ? options.workers : default_workers(), tasks);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return out;
}

/// The full hyperparameter grid over the eight default problems, 5 trials.
inline ExperimentPlan default_paper_plan(std::uint64_t master_seed = 0) {
    ExperimentPlan plan;
    for (auto name : kProblemNames) plan.problems.push_back({.name = std::string(name), .n = default_size(name)});
    for (std::size_t r : {0, 5, 10}) plan.cells.push_back(RhcConfig{.restarts = r, .is_default = r == 0});
    for (double c : {0.001, 0.005, 0.01})
        plan.cells.push_back(SaConfig{.exp_const = c, .is_default = c == 0.005});
    for (std::size_t p : {100, 200, 300}) plan.cells.push_back(GaConfig{.pop_size = p, .is_default = p == 200});
    for (std::size_t p : {100, 200, 300})
        plan.cells.push_back(MimicConfig{.pop_size = p, .is_default = p == 200});
    plan.trials = 5;
    plan.master_seed = master_seed;
    return plan;
}

// ---------------------------------------------------------------------------
// Plan files
// ---------------------------------------------------------------------------

/// Malformed plan document. The message names the line or the field.
class PlanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline nlohmann::ordered_json to_json(const AlgorithmConfig& cfg) {
    return std::visit(
        [](const auto& c) {
            using C = std::decay_t<decltype(c)>;
            nlohmann::ordered_json j;
            if constexpr (std::is_same_v<C, RhcConfig>) {
                j["algorithm"] = "rhc";
                j["restarts"] = c.restarts;
            } else if constexpr (std::is_same_v<C, SaConfig>) {
                j["algorithm"] = "sa";
                j["t0"] = c.t0;
                j["exp_const"] = c.exp_const;
                j["min_temp"] = c.min_temp;
            } else if constexpr (std::is_same_v<C, GaConfig>) {
                j["algorithm"] = "ga";
                j["pop_size"] = c.pop_size;
                j["mutation_prob"] = c.mutation_prob;
            } else {
                j["algorithm"] = "mimic";
                j["pop_size"] = c.pop_size;
                j["keep_fraction"] = c.keep_fraction;
                j["smoothing"] = c.smoothing;
            }
            j["max_iters"] = c.max_iters;
            j["max_attempts"] = c.max_attempts;
            j["default"] = c.is_default;
            return j;
        },
        cfg);
}

inline nlohmann::ordered_json to_json(const ProblemDescriptor& d) {
    nlohmann::ordered_json j;
    j["name"] = d.name;
    if (d.id) j["id"] = *d.id;
    j["n"] = d.n;
    if (d.threshold) j["threshold"] = *d.threshold;
    if (d.name == "tsp" || d.name == "knapsack") j["instance_seed"] = d.instance_seed;
    if (d.instance_file) j["instance_file"] = *d.instance_file;
    return j;
}

inline nlohmann::ordered_json to_json(const ExperimentPlan& plan) {
    nlohmann::ordered_json j;
    j["master_seed"] = plan.master_seed;
    j["trials"] = plan.trials;
    j["problems"] = nlohmann::ordered_json::array();
    for (const auto& p : plan.problems) j["problems"].push_back(to_json(p));
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : plan.cells) j["cells"].push_back(to_json(c));
    return j;
}

inline std::string dump_plan(const ExperimentPlan& plan) { return to_json(plan).dump(2) + "\n"; }

namespace detail {

class FieldReader {
public:
    FieldReader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw PlanError("field '" + path_ + "': expected an object");
    }

    template <class T>
    T get(const char* name, T fallback) {
        used_.insert(name);
        if (!j_.contains(name)) return fallback;
        return convert<T>(j_.at(name), name);
    }

    template <class T>
    T require(const char* name) {
        used_.insert(name);
        if (!j_.contains(name)) throw PlanError("field '" + where(name) + "': missing");
        return convert<T>(j_.at(name), name);
    }

    template <class T>
    std::optional<T> optional(const char* name) {
        used_.insert(name);
        if (!j_.contains(name)) return std::nullopt;
        return convert<T>(j_.at(name), name);
    }

    void reject_unknown() const {
        for (const auto& [k, v] : j_.items())
            if (!used_.count(k)) throw PlanError("field '" + where(k) + "': unknown field");
    }

    [[nodiscard]] std::string where(const std::string& name) const {
        return path_.empty() ? name : path_ + "." + name;
    }

private:
    template <class T>
    T convert(const nlohmann::json& v, const char* name) const {
        if constexpr (std::is_same_v<T, nlohmann::json>) {
            return v;
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw PlanError("field '" + where(name) + "': expected true or false");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_unsigned())
                throw PlanError("field '" + where(name) + "': expected a non-negative integer");
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) throw PlanError("field '" + where(name) + "': expected a number");
        } else {
            if (!v.is_string()) throw PlanError("field '" + where(name) + "': expected a string");
        }
        return v.get<T>();
    }

    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> used_;
};

inline AlgorithmConfig cell_from_json(const nlohmann::json& j, const std::string& path) {
    FieldReader f(j, path);
    const auto alg = f.require<std::string>("algorithm");
    AlgorithmConfig cfg;
    auto common = [&](auto& c) {
        c.max_iters = f.get<std::size_t>("max_iters", c.max_iters);
        c.max_attempts = f.get<std::size_t>("max_attempts", c.max_attempts);
        c.is_default = f.get<bool>("default", false);
    };
    if (alg == "rhc") {
        RhcConfig c;
        c.restarts = f.get<std::size_t>("restarts", c.restarts);
        common(c);
        cfg = c;
    } else if (alg == "sa") {
        SaConfig c;
        c.t0 = f.get<double>("t0", c.t0);
        c.exp_const = f.get<double>("exp_const", c.exp_const);
        c.min_temp = f.get<double>("min_temp", c.min_temp);
        common(c);
        cfg = c;
    } else if (alg == "ga") {
        GaConfig c;
        c.pop_size = f.get<std::size_t>("pop_size", c.pop_size);
        c.mutation_prob = f.get<double>("mutation_prob", c.mutation_prob);
        common(c);
        cfg = c;
    } else if (alg == "mimic") {
        MimicConfig c;
        c.pop_size = f.get<std::size_t>("pop_size", c.pop_size);
        c.keep_fraction = f.get<double>("keep_fraction", c.keep_fraction);
        c.smoothing = f.get<double>("smoothing", c.smoothing);
        common(c);
        cfg = c;
    } else {
        throw PlanError("field '" + f.where("algorithm") + "': unknown algorithm '" + alg +
                        "' (valid: rhc, sa, ga, mimic)");
    }
    f.reject_unknown();
    return cfg;
}

inline ProblemDescriptor problem_from_json(const nlohmann::json& j, const std::string& path) {
    FieldReader f(j, path);
    ProblemDescriptor d;
    d.name = f.require<std::string>("name");
    if (!is_known_problem(d.name)) throw PlanError("field '" + f.where("name") + "': unknown problem '" + d.name + "'");
    d.id = f.optional<std::string>("id");
    d.n = f.get<std::size_t>("n", default_size(d.name));
    d.threshold = f.optional<std::size_t>("threshold");
    d.instance_seed = f.get<std::uint64_t>("instance_seed", d.instance_seed);
    d.instance_file = f.optional<std::string>("instance_file");
    f.reject_unknown();
    return d;
}

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

}  // namespace detail

inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
    detail::FieldReader f(j, "");
    ExperimentPlan plan;
    plan.master_seed = f.get<std::uint64_t>("master_seed", 0);
    plan.trials = f.get<std::size_t>("trials", 5);
    if (plan.trials == 0) throw PlanError("field 'trials': must be at least 1");
    const auto problems = f.require<nlohmann::json>("problems");
    const auto cells = f.require<nlohmann::json>("cells");
    f.reject_unknown();
    if (!problems.is_array()) throw PlanError("field 'problems': expected an array");
    if (!cells.is_array()) throw PlanError("field 'cells': expected an array");
    for (std::size_t i = 0; i < problems.size(); ++i)
        plan.problems.push_back(detail::problem_from_json(problems[i], "problems[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < cells.size(); ++i)
        plan.cells.push_back(detail::cell_from_json(cells[i], "cells[" + std::to_string(i) + "]"));
    return plan;
}

/// Parses a plan document. Syntax errors report the line; schema errors the field path.
inline ExperimentPlan parse_plan(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PlanError("line " + std::to_string(detail::line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1)) +
                        ": " + e.what());
    }
    return plan_from_json(j);
}

inline ExperimentPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PlanError("cannot read plan file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_plan(buf.str());
    } catch (const PlanError& e) {
        throw PlanError(path.string() + ": " + e.what());
    }
}

}  // namespace ropt
