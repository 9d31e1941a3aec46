// Command-line front end: single runs, plan sweeps, report regeneration, exact optima.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <ropt/ropt.hpp>

namespace fs = std::filesystem;
using namespace ropt;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string valid_problems() {
    std::string s;
    for (auto n : kProblemNames) s += (s.empty() ? "" : ", ") + std::string(n);
    return s;
}

struct RunArgs {
    std::string problem;
    std::string alg;
    std::size_t n = 0;
    std::optional<std::size_t> t;
    std::uint64_t instance_seed = 1;
    std::optional<std::size_t> restarts;
    std::optional<double> expconst, t0, min_temp, mutation, keep, smoothing;
    std::optional<std::size_t> pop, max_iters, max_attempts;
    std::uint64_t seed = 0;
    std::size_t trials = 5;
};

AlgorithmConfig config_from(const RunArgs& a) {
    auto common = [&](auto& c) {
        if (a.max_iters) c.max_iters = *a.max_iters;
        if (a.max_attempts) c.max_attempts = *a.max_attempts;
    };
    auto reject = [&](bool present, const char* flag) {
        if (present) throw Failure(std::string(flag) + " does not apply to --alg " + a.alg);
    };
    if (a.alg == "rhc") {
        reject(a.expconst || a.t0 || a.min_temp || a.pop || a.mutation || a.keep || a.smoothing,
               "SA/GA/MIMIC flags");
        RhcConfig c;
        if (a.restarts) c.restarts = *a.restarts;
        common(c);
        return c;
    }
    if (a.alg == "sa") {
        reject(a.restarts || a.pop || a.mutation || a.keep || a.smoothing, "RHC/GA/MIMIC flags");
        SaConfig c;
        if (a.expconst) c.exp_const = *a.expconst;
        if (a.t0) c.t0 = *a.t0;
        if (a.min_temp) c.min_temp = *a.min_temp;
        common(c);
        return c;
    }
    if (a.alg == "ga") {
        reject(a.restarts || a.expconst || a.t0 || a.min_temp || a.keep || a.smoothing, "RHC/SA/MIMIC flags");
        GaConfig c;
        if (a.pop) c.pop_size = *a.pop;
        if (a.mutation) c.mutation_prob = *a.mutation;
        common(c);
        return c;
    }
    if (a.alg == "mimic") {
        reject(a.restarts || a.expconst || a.t0 || a.min_temp || a.mutation, "RHC/SA/GA flags");
        MimicConfig c;
        if (a.pop) c.pop_size = *a.pop;
        if (a.keep) c.keep_fraction = *a.keep;
        if (a.smoothing) c.smoothing = *a.smoothing;
        common(c);
        return c;
    }
    throw Failure("unknown algorithm '" + a.alg + "' (valid: rhc, sa, ga, mimic)");
}

ProblemDescriptor descriptor_from(const std::string& problem, std::size_t n, std::optional<std::size_t> t,
                                  std::uint64_t instance_seed) {
    if (!is_known_problem(problem))
        throw Failure("unknown problem '" + problem + "' (valid: " + valid_problems() + ")");
    ProblemDescriptor d;
    d.name = problem;
    d.n = n;
    d.threshold = t;
    d.instance_seed = instance_seed;
    return d;
}

int cmd_run(const RunArgs& a) {
    const auto cfg = config_from(a);
    if (a.trials == 0) throw Failure("--trials must be at least 1");
    const auto spec = ProblemSpec::make(descriptor_from(a.problem, a.n, a.t, a.instance_seed));
    const auto s = run_cell(spec, cfg, a.trials, a.seed);
    std::cout << "problem=" << spec.id() << " n=" << spec.size() << " algorithm=" << s.algorithm_id
              << " param=" << s.param << " seed=" << a.seed << " trials=" << s.trials()
              << " best_fitness=" << detail::shortest(s.mean_best_fitness)
              << " convergence_iteration=" << detail::shortest(s.mean_convergence_iteration)
              << " total_fitness_evals=" << detail::shortest(s.mean_total_fitness_evals)
              << " wall_clock_s=" << detail::shortest(s.mean_wall_clock_s) << "\n";
    return 0;
}

void ensure_writable(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Failure("cannot create output directory " + dir.string() + ": " + ec.message());
    const auto probe = dir / ".ropt_write_probe";
    {
        std::ofstream out(probe);
        if (!out) throw Failure("output directory " + dir.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

struct SweepArgs {
    bool paper = false;
    std::string plan_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    bool quiet = false;
};

int cmd_sweep(const SweepArgs& a) {
    if (a.paper == !a.plan_path.empty()) throw Failure("give exactly one of --paper or --plan");
    ExperimentPlan plan;
    if (a.paper) {
        plan = default_paper_plan();
    } else {
        try {
            plan = load_plan(a.plan_path);
        } catch (const PlanError& e) {
            throw Failure(e.what());
        }
    }
    if (a.seed) plan.master_seed = *a.seed;
    const fs::path out = a.out;
    ensure_writable(out);

    const auto cells = plan.problems.size() * plan.cells.size();
    RunOptions opts;
    opts.workers = a.workers.value_or(default_workers());
    std::size_t done = 0;
    if (!a.quiet) {
        opts.on_cell_done = [&](std::size_t, const CellSummary& s) {
            std::fprintf(stderr, "[%zu/%zu] %s %s %s mean_best=%s\n", ++done, cells, s.problem_id.c_str(),
                         s.algorithm_id.c_str(), s.param.c_str(), detail::fixed(s.mean_best_fitness, 1).c_str());
        };
    }
    const auto summaries = run_plan(plan, opts);

    nlohmann::ordered_json flags;
    flags["paper"] = a.paper;
    if (!a.plan_path.empty()) flags["plan"] = a.plan_path;
    flags["out"] = a.out;
    flags["seed"] = plan.master_seed;
    flags["workers"] = opts.workers;
    write_report(out, plan, summaries, flags);
    return 0;
}

int cmd_report(const std::string& in, const std::string& out_arg) {
    const fs::path dir = in;
    const fs::path out = out_arg.empty() ? dir : fs::path(out_arg);
    const auto stored = load_results(dir / "results.json");
    ensure_writable(out);
    nlohmann::ordered_json flags;
    flags["in"] = in;
    flags["out"] = out.string();
    write_report(out, stored.plan, stored.summaries, flags);
    return 0;
}

int cmd_oracle(const std::string& problem, std::size_t n, std::optional<std::size_t> t, std::uint64_t instance_seed) {
    const auto spec = ProblemSpec::make(descriptor_from(problem, n, t, instance_seed));
    const auto bound = [&]() -> std::size_t {
        if (problem == "tsp") return kMaxExhaustiveTsp;
        if (problem == "queens") return kMaxExhaustiveQueens;
        if (problem == "knapsack") return kMaxKnapsackDp;
        return kMaxExhaustiveBits;
    }();
    if (spec.size() > bound)
        throw Failure("n=" + std::to_string(spec.size()) + " exceeds the exact-search bound for " + problem +
                      " (n <= " + std::to_string(bound) + ")");
    spec.visit([](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Knapsack>) {
            const auto best = knapsack_dp(*p.instance);
            std::cout << "optimum=" << detail::shortest(best.value) << " state=" << best.state.to_string() << "\n";
        } else if constexpr (std::is_same_v<typename P::state_type, Permutation>) {
            const auto best = exhaustive_permutations(p, std::is_same_v<P, Tsp>);
            std::cout << "optimum=" << detail::shortest(best.value) << " state=" << best.state.to_string() << "\n";
        } else {
            const auto best = exhaustive_bits(p);
            std::cout << "optimum=" << detail::shortest(best.value) << " state=" << best.state.to_string() << "\n";
        }
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized optimization benchmark"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run one algorithm cell on one problem");
    run_cmd->add_option("problem", run.problem, "Problem name")->required();
    run_cmd->add_option("--alg", run.alg, "rhc, sa, ga or mimic")->required();
    run_cmd->add_option("--n", run.n, "Problem size (0 = default)");
    run_cmd->add_option("--t", run.t, "Peaks threshold");
    run_cmd->add_option("--instance-seed", run.instance_seed, "TSP/knapsack generator seed");
    run_cmd->add_option("--restarts", run.restarts);
    run_cmd->add_option("--expconst", run.expconst);
    run_cmd->add_option("--t0", run.t0);
    run_cmd->add_option("--min-temp", run.min_temp);
    run_cmd->add_option("--pop", run.pop);
    run_cmd->add_option("--mutation", run.mutation);
    run_cmd->add_option("--keep", run.keep);
    run_cmd->add_option("--smoothing", run.smoothing);
    run_cmd->add_option("--max-iters", run.max_iters);
    run_cmd->add_option("--max-attempts", run.max_attempts);
    run_cmd->add_option("--seed", run.seed, "Master seed");
    run_cmd->add_option("--trials", run.trials, "Number of trials");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a whole plan and write the report");
    sweep_cmd->add_flag("--paper", sweep.paper, "Use the built-in hyperparameter grid");
    sweep_cmd->add_option("--plan", sweep.plan_path, "Plan file (JSON)");
    sweep_cmd->add_option("--out", sweep.out, "Output directory")->required();
    sweep_cmd->add_option("--seed", sweep.seed, "Master seed (overrides the plan)");
    sweep_cmd->add_option("--workers", sweep.workers, "Worker threads (default: ROPT_WORKERS or all cores)");
    sweep_cmd->add_flag("--quiet", sweep.quiet, "No per-cell log lines");

    std::string report_in, report_out;
    auto* report_cmd = app.add_subcommand("report", "Re-emit report files from results.json");
    report_cmd->add_option("--in", report_in, "Directory holding results.json")->required();
    report_cmd->add_option("--out", report_out, "Output directory (default: --in)");

    std::string oracle_problem;
    std::size_t oracle_n = 0;
    std::optional<std::size_t> oracle_t;
    std::uint64_t oracle_instance_seed = 1;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by exhaustive search or DP");
    oracle_cmd->add_option("problem", oracle_problem, "Problem name")->required();
    oracle_cmd->add_option("--n", oracle_n, "Problem size")->required();
    oracle_cmd->add_option("--t", oracle_t, "Peaks threshold");
    oracle_cmd->add_option("--instance-seed", oracle_instance_seed, "TSP/knapsack generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.get_exit_code() ? e.get_exit_code() : 2;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*sweep_cmd) return cmd_sweep(sweep);
        if (*report_cmd) return cmd_report(report_in, report_out);
        if (*oracle_cmd) return cmd_oracle(oracle_problem, oracle_n, oracle_t, oracle_instance_seed);
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (auto& c : msg)
            if (c == '\n') c = ' ';
        std::cerr << "error: " << msg << "\n";
        return 1;
    }
    return 1;
}
