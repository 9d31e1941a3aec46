#pragma once

/// @file report.hpp
/// @brief Result tables, convergence curves, cross-group summaries, manifest.
///
/// Everything an output directory holds:
///
///     tables/<problem>.csv    algorithm,param,average_fitness,feval
///     curves.csv              problem,algorithm,param,trial,iteration,best_fitness
///     curve_restarts.csv      problem,algorithm,param,trial,iteration
///     group_summary.csv       per group x algorithm aggregates
///     group_ranking.csv       algorithms ranked by percent of optimum per group
///     results.json            the plan plus every per-trial record
///     manifest.json           plan hash, echoed flags, every file with size and hash

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <ropt/harness.hpp>
#include <ropt/problem_spec.hpp>

namespace ropt {

namespace fs = std::filesystem;

/// Summaries that cannot belong to one plan, or a table file with the wrong layout.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

inline constexpr std::string_view kTableHeader = "algorithm,param,average_fitness,feval";

struct TableRow {
    std::string algorithm;
    std::string param;
    double average_fitness = 0.0;
    long long feval = 0;

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct ResultsTable {
    std::string problem_id;
    std::vector<TableRow> rows;
};

/// Throws SchemaError unless every summary has the same number of trials.
inline void check_consistent(const std::vector<CellSummary>& summaries) {
    for (const auto& s : summaries) {
        if (s.trials() != summaries.front().trials())
            throw SchemaError("inconsistent trial counts: " + s.problem_id + " " + s.algorithm_id + " " +
                              s.param + " has " + std::to_string(s.trials()) + ", expected " +
                              std::to_string(summaries.front().trials()));
    }
}

/// Rows for one problem, in summary order. Feval is the mean convergence iteration, rounded.
inline ResultsTable make_table(const std::string& problem_id, const std::vector<CellSummary>& summaries) {
    ResultsTable t{problem_id, {}};
    for (const auto& s : summaries) {
        if (s.problem_id != problem_id) continue;
        t.rows.push_back({s.algorithm_id, s.param, s.mean_best_fitness,
                          std::llround(s.mean_convergence_iteration)});
    }
    return t;
}

inline std::string render_table(const ResultsTable& t) {
    std::string out(kTableHeader);
    out += '\n';
    for (const auto& r : t.rows)
        out += r.algorithm + "," + r.param + "," + detail::fixed(r.average_fitness, 1) + "," +
               std::to_string(r.feval) + "\n";
    return out;
}

inline ResultsTable parse_table(std::string_view text, std::string problem_id = {}) {
    ResultsTable t{std::move(problem_id), {}};
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kTableHeader) throw SchemaError("table: bad header");
    for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
        const auto f = detail::split(line, ',');
        if (f.size() != 4) throw SchemaError("table line " + std::to_string(lineno) + ": expected 4 fields");
        TableRow r{f[0], f[1], 0.0, 0};
        try {
            std::size_t used = 0;
            r.average_fitness = std::stod(f[2], &used);
            if (used != f[2].size()) throw std::invalid_argument(f[2]);
            r.feval = std::stoll(f[3], &used);
            if (used != f[3].size()) throw std::invalid_argument(f[3]);
        } catch (const std::logic_error&) {
            throw SchemaError("table line " + std::to_string(lineno) + ": bad number");
        }
        t.rows.push_back(std::move(r));
    }
    return t;
}

/// Writes tables/<id>.csv for every id in `problem_ids` (header only when a
/// problem has no summaries). Returns the files written.
inline std::vector<fs::path> emit_tables(const std::vector<CellSummary>& summaries,
                                         const std::vector<std::string>& problem_ids, const fs::path& dir) {
    check_consistent(summaries);
    fs::create_directories(dir / "tables");
    std::vector<fs::path> files;
    for (const auto& id : problem_ids) {
        const auto path = dir / "tables" / (id + ".csv");
        detail::write_file(path, render_table(make_table(id, summaries)));
        files.push_back(path);
    }
    return files;
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

inline constexpr std::string_view kCurveHeader = "problem,algorithm,param,trial,iteration,best_fitness";
inline constexpr std::string_view kRestartHeader = "problem,algorithm,param,trial,iteration";

/// Long-format curve rows; iterations are numbered from 1.
inline std::string render_curves(const std::vector<CellSummary>& summaries) {
    std::string out(kCurveHeader);
    out += '\n';
    for (const auto& s : summaries) {
        for (const auto& r : s.records) {
            const auto prefix = s.problem_id + "," + s.algorithm_id + "," + s.param + "," +
                                std::to_string(r.trial_index) + ",";
            for (std::size_t i = 0; i < r.curve.size(); ++i)
                out += prefix + std::to_string(i + 1) + "," + detail::shortest(r.curve[i]) + "\n";
        }
    }
    return out;
}

/// First iteration of every restarted climb, one row per boundary.
inline std::string render_restarts(const std::vector<CellSummary>& summaries) {
    std::string out(kRestartHeader);
    out += '\n';
    for (const auto& s : summaries)
        for (const auto& r : s.records)
            for (auto b : r.restart_boundaries)
                out += s.problem_id + "," + s.algorithm_id + "," + s.param + "," + std::to_string(r.trial_index) +
                       "," + std::to_string(b + 1) + "\n";
    return out;
}

inline std::vector<fs::path> emit_curves(const std::vector<CellSummary>& summaries, const fs::path& dir) {
    fs::create_directories(dir);
    detail::write_file(dir / "curves.csv", render_curves(summaries));
    detail::write_file(dir / "curve_restarts.csv", render_restarts(summaries));
    return {dir / "curves.csv", dir / "curve_restarts.csv"};
}

// ---------------------------------------------------------------------------
// Cross-group summary
// ---------------------------------------------------------------------------

struct ProblemInfo {
    ProblemGroup group = ProblemGroup::Binary;
    Direction direction = Direction::Maximize;
    std::optional<double> optimum;
};

/// Group, direction and known optimum for every problem in the plan.
inline std::map<std::string, ProblemInfo> problem_infos(const ExperimentPlan& plan) {
    std::map<std::string, ProblemInfo> out;
    for (const auto& spec : validate_plan(plan))
        out[spec.id()] = {spec.group(), spec.direction(), known_optimum(spec)};
    return out;
}

/// Share of the optimum reached, in percent. For minimization it is optimum / achieved.
inline double percent_of_optimum(double achieved, double optimum, Direction dir) {
    if (dir == Direction::Minimize) return achieved > 0.0 ? optimum / achieved * 100.0 : 0.0;
    return optimum != 0.0 ? achieved / optimum * 100.0 : 0.0;
}

struct GroupRow {
    ProblemGroup group = ProblemGroup::Binary;
    std::string algorithm;
    /// Absent when every cell of the group lacks a known optimum.
    std::optional<double> mean_percent_of_optimum;
    double mean_wall_clock_s = 0.0;
    double mean_wall_clock_per_iteration_s = 0.0;
    double mean_convergence_iteration = 0.0;
    std::size_t included_cells = 0;
    std::size_t excluded_cells = 0;
};

struct GroupRank {
    ProblemGroup group = ProblemGroup::Binary;
    std::size_t rank = 0;
    std::string algorithm;
    double mean_percent_of_optimum = 0.0;
};

struct GroupSummary {
    std::vector<GroupRow> rows;
    std::vector<GroupRank> ranking;

    [[nodiscard]] const GroupRow* find(ProblemGroup g, std::string_view alg) const {
        for (const auto& r : rows)
            if (r.group == g && r.algorithm == alg) return &r;
        return nullptr;
    }
};

/// Averages every cell of a group and algorithm over all its hyperparameter
/// settings. Cells without a known optimum are counted as excluded.
inline GroupSummary compute_group_summary(const std::vector<CellSummary>& summaries,
                                          const std::map<std::string, ProblemInfo>& infos) {
    struct Acc {
        double percent = 0.0, wall = 0.0, wall_per_iter = 0.0, conv = 0.0;
        std::size_t cells = 0, included = 0;
    };
    std::vector<std::string> algorithms;
    std::map<std::pair<ProblemGroup, std::string>, Acc> acc;
    for (const auto& s : summaries) {
        const auto it = infos.find(s.problem_id);
        if (it == infos.end()) throw SchemaError("no problem info for '" + s.problem_id + "'");
        if (std::find(algorithms.begin(), algorithms.end(), s.algorithm_id) == algorithms.end())
            algorithms.push_back(s.algorithm_id);
        auto& a = acc[{it->second.group, s.algorithm_id}];
        ++a.cells;
        a.wall += s.mean_wall_clock_s;
        a.conv += s.mean_convergence_iteration;
        double per_iter = 0.0;
        for (const auto& r : s.records)
            per_iter += r.curve.empty() ? 0.0 : r.wall_clock_s / static_cast<double>(r.curve.size());
        a.wall_per_iter += s.records.empty() ? 0.0 : per_iter / static_cast<double>(s.records.size());
        if (it->second.optimum) {
            ++a.included;
            a.percent += percent_of_optimum(s.mean_best_fitness, *it->second.optimum, it->second.direction);
        }
    }

    GroupSummary out;
    for (auto g : {ProblemGroup::Binary, ProblemGroup::Permutation, ProblemGroup::Combinatorial}) {
        std::vector<GroupRank> ranks;
        for (const auto& alg : algorithms) {
            const auto it = acc.find({g, alg});
            if (it == acc.end()) continue;
            const auto& a = it->second;
            const auto n = static_cast<double>(a.cells);
            GroupRow row{g, alg, std::nullopt, a.wall / n, a.wall_per_iter / n, a.conv / n, a.included,
                         a.cells - a.included};
            if (a.included > 0) {
                row.mean_percent_of_optimum = a.percent / static_cast<double>(a.included);
                ranks.push_back({g, 0, alg, *row.mean_percent_of_optimum});
            }
            out.rows.push_back(row);
        }
        std::stable_sort(ranks.begin(), ranks.end(), [](const auto& x, const auto& y) {
            return x.mean_percent_of_optimum > y.mean_percent_of_optimum;
        });
        for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i].rank = i + 1;
        out.ranking.insert(out.ranking.end(), ranks.begin(), ranks.end());
    }
    return out;
}

inline constexpr std::string_view kGroupHeader =
    "group,algorithm,mean_percent_of_optimum,mean_wall_clock_s,mean_wall_clock_per_iteration_s,"
    "mean_convergence_iteration,included_cells,excluded_cells";
inline constexpr std::string_view kRankingHeader = "group,rank,algorithm,mean_percent_of_optimum";

inline std::string render_group_summary(const GroupSummary& g) {
    std::string out(kGroupHeader);
    out += '\n';
    for (const auto& r : g.rows) {
        out += std::string(to_string(r.group)) + "," + r.algorithm + "," +
               (r.mean_percent_of_optimum ? detail::fixed(*r.mean_percent_of_optimum, 3) : "NA") + "," +
               detail::fixed(r.mean_wall_clock_s, 6) + "," + detail::fixed(r.mean_wall_clock_per_iteration_s, 9) +
               "," + detail::fixed(r.mean_convergence_iteration, 3) + "," + std::to_string(r.included_cells) +
               "," + std::to_string(r.excluded_cells) + "\n";
    }
    return out;
}

inline std::string render_group_ranking(const GroupSummary& g) {
    std::string out(kRankingHeader);
    out += '\n';
    for (const auto& r : g.ranking)
        out += std::string(to_string(r.group)) + "," + std::to_string(r.rank) + "," + r.algorithm + "," +
               detail::fixed(r.mean_percent_of_optimum, 3) + "\n";
    return out;
}

inline std::vector<fs::path> emit_group_summary(const GroupSummary& g, const fs::path& dir) {
    fs::create_directories(dir);
    detail::write_file(dir / "group_summary.csv", render_group_summary(g));
    detail::write_file(dir / "group_ranking.csv", render_group_ranking(g));
    return {dir / "group_summary.csv", dir / "group_ranking.csv"};
}

// ---------------------------------------------------------------------------
// Results store
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json state_to_json(const AnyState& s) {
    if (const auto* b = std::get_if<BitString>(&s)) return b->to_string();
    const auto view = std::get<Permutation>(s).view();
    return nlohmann::ordered_json(std::vector<Permutation::value_type>(view.begin(), view.end()));
}

inline AnyState state_from_json(const nlohmann::json& j) {
    if (j.is_string()) return BitString::parse(j.get<std::string>());
    return Permutation(j.get<std::vector<Permutation::value_type>>());
}

inline nlohmann::ordered_json results_to_json(const ExperimentPlan& plan, const std::vector<CellSummary>& summaries) {
    nlohmann::ordered_json j;
    j["plan"] = to_json(plan);
    j["summaries"] = nlohmann::ordered_json::array();
    for (const auto& s : summaries) {
        nlohmann::ordered_json js;
        js["problem_id"] = s.problem_id;
        js["algorithm_id"] = s.algorithm_id;
        js["param"] = s.param;
        js["canonical_params"] = s.canonical_params;
        js["default"] = s.is_default;
        js["mean_best_fitness"] = s.mean_best_fitness;
        js["mean_convergence_iteration"] = s.mean_convergence_iteration;
        js["mean_wall_clock_s"] = s.mean_wall_clock_s;
        js["mean_total_fitness_evals"] = s.mean_total_fitness_evals;
        js["records"] = nlohmann::ordered_json::array();
        for (const auto& r : s.records) {
            nlohmann::ordered_json jr;
            jr["trial_index"] = r.trial_index;
            jr["best_fitness"] = r.best_fitness;
            jr["best_state"] = state_to_json(r.best_state);
            jr["convergence_iteration"] = r.convergence_iteration;
            jr["total_fitness_evals"] = r.total_fitness_evals;
            jr["wall_clock_s"] = r.wall_clock_s;
            jr["curve"] = r.curve;
            jr["restart_boundaries"] = r.restart_boundaries;
            js["records"].push_back(std::move(jr));
        }
        j["summaries"].push_back(std::move(js));
    }
    return j;
}

struct StoredResults {
    ExperimentPlan plan;
    std::vector<CellSummary> summaries;
};

inline StoredResults results_from_json(const nlohmann::json& j) {
    StoredResults out;
    try {
        out.plan = plan_from_json(j.at("plan"));
        for (const auto& js : j.at("summaries")) {
            CellSummary s;
            s.problem_id = js.at("problem_id").get<std::string>();
            s.algorithm_id = js.at("algorithm_id").get<std::string>();
            s.param = js.at("param").get<std::string>();
            s.canonical_params = js.at("canonical_params").get<std::string>();
            s.is_default = js.at("default").get<bool>();
            for (const auto& jr : js.at("records")) {
                RunRecord r;
                r.problem_id = s.problem_id;
                r.algorithm_id = s.algorithm_id;
                r.params = s.param;
                r.trial_index = jr.at("trial_index").get<std::uint64_t>();
                r.best_fitness = jr.at("best_fitness").get<double>();
                r.best_state = state_from_json(jr.at("best_state"));
                r.convergence_iteration = jr.at("convergence_iteration").get<std::size_t>();
                r.total_fitness_evals = jr.at("total_fitness_evals").get<std::uint64_t>();
                r.wall_clock_s = jr.at("wall_clock_s").get<double>();
                r.curve = jr.at("curve").get<std::vector<double>>();
                r.restart_boundaries = jr.at("restart_boundaries").get<std::vector<std::size_t>>();
                s.records.push_back(std::move(r));
            }
            summarize(s);
            out.summaries.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("results: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("results: ") + e.what());
    }
    return out;
}

inline StoredResults load_results(const fs::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
    return results_from_json(j);
}

// ---------------------------------------------------------------------------
// Full report
// ---------------------------------------------------------------------------

inline std::string plan_hash(const ExperimentPlan& plan) { return detail::hex64(fnv1a(dump_plan(plan))); }

/// Writes every report file plus manifest.json into `dir`. `flags` is echoed
/// into the manifest. Returns the manifest document.
inline nlohmann::ordered_json write_report(const fs::path& dir, const ExperimentPlan& plan,
                                           const std::vector<CellSummary>& summaries,
                                           const nlohmann::ordered_json& flags = nlohmann::ordered_json::object()) {
    fs::create_directories(dir);
    check_consistent(summaries);
    std::vector<std::string> ids;
    for (const auto& p : plan.problems) ids.push_back(p.effective_id());

    std::vector<fs::path> files = emit_tables(summaries, ids, dir);
    for (auto& f : emit_curves(summaries, dir)) files.push_back(std::move(f));
    for (auto& f : emit_group_summary(compute_group_summary(summaries, problem_infos(plan)), dir))
        files.push_back(std::move(f));
    detail::write_file(dir / "results.json", results_to_json(plan, summaries).dump(1) + "\n");
    files.push_back(dir / "results.json");

    nlohmann::ordered_json manifest;
    manifest["plan_hash"] = plan_hash(plan);
    manifest["master_seed"] = plan.master_seed;
    manifest["trials"] = plan.trials;
    manifest["flags"] = flags;
    manifest["files"] = nlohmann::ordered_json::array();
    for (const auto& f : files) {
        const auto content = detail::read_file(f);
        manifest["files"].push_back({{"path", fs::relative(f, dir).generic_string()},
                                     {"bytes", content.size()},
                                     {"fnv1a", detail::hex64(fnv1a(content))}});
    }
    detail::write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

}  // namespace ropt
