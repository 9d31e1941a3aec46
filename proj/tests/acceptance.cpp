// Acceptance run: one PASS/FAIL line per criterion, master seed 42.
//
// Criteria listed in kKnownRed are reported faithfully but do not change the
// exit code; an unexpected FAIL (or a known-red criterion that passes) does.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <ropt/ropt.hpp>

#include "counting.hpp"
#include "reference.hpp"

using namespace ropt;

namespace {

constexpr std::uint64_t kMasterSeed = 42;
const std::set<int> kKnownRed = {10};

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!ok || detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [x]");
    }
};

std::string num(double v, int digits = 2) { return detail::fixed(v, digits); }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", v);
    return buf;
}

BitString to_bits(const reference::Bits& b) {
    BitString s(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) s.set(i, static_cast<std::uint8_t>(b[i]));
    return s;
}

std::vector<std::size_t> rows_of(const Permutation& p) { return {p.view().begin(), p.view().end()}; }

// 1 -------------------------------------------------------------------------
Verdict fitness_oracles() {
    Verdict v;
    const std::size_t n = 10;
    std::size_t mismatches = 0;
    for (std::size_t t : {1, 2, 3, 5}) {
        const PeaksParams pp{n, t};
        for (std::uint64_t x = 0; x < (1U << n); ++x) {
            const auto ref = reference::bits_of(x, n);
            const auto s = to_bits(ref);
            if (t == 1) {
                mismatches += OneMax{n}.fitness(s) != reference::onemax(ref);
                mismatches += FlipFlop{n}.fitness(s) != reference::flipflop(ref);
            }
            mismatches += FourPeaks{pp}.fitness(s) != reference::four_peaks(ref, t);
            mismatches += SixPeaks{pp}.fitness(s) != reference::six_peaks(ref, t);
            mismatches += ContinuousPeaks{pp}.fitness(s) != reference::continuous_peaks(ref, t);
        }
    }
    v.require(mismatches == 0, "mismatches=" + std::to_string(mismatches) + " over 2^10 states, T in {1,2,3,5}");
    return v;
}

// 2 -------------------------------------------------------------------------
Verdict structured_oracles() {
    Verdict v;
    std::vector<std::uint32_t> perm = {0, 1, 2, 3, 4, 5};
    std::size_t boards = 0, queen_bad = 0;
    do {
        const auto p = Permutation(perm);
        queen_bad += Queens{6}.fitness(p) != 15.0 - static_cast<double>(reference::queen_attacks(rows_of(p)));
        ++boards;
    } while (std::next_permutation(perm.begin(), perm.end()));
    v.require(boards == 720 && queen_bad == 0, "queens n=6 boards=" + std::to_string(boards) +
                                                   " mismatches=" + std::to_string(queen_bad));

    const auto inst = generate_knapsack(12, 1);
    const Knapsack ks(inst);
    std::size_t ks_bad = 0;
    for (std::uint64_t x = 0; x < (1U << 12); ++x) {
        const auto ref = reference::bits_of(x, 12);
        ks_bad += ks.fitness(to_bits(ref)) != reference::knapsack(ref, inst.values, inst.weights, inst.capacity);
    }
    v.require(ks_bad == 0, "knapsack n=12 subsets=4096 mismatches=" + std::to_string(ks_bad));

    const auto cities = generate_tsp(22, 1);
    const Tsp tsp(cities);
    std::vector<std::pair<double, double>> xy;
    for (const auto& c : cities.coords()) xy.emplace_back(c.x, c.y);
    Rng rng(derive_seed({kMasterSeed, 2}));
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto tour = random_state<Permutation>(22, rng);
        auto order = rows_of(tour);
        const double len = tsp.fitness(tour);
        worst = std::max(worst, std::abs(len - reference::tour(order, xy)));
        std::rotate(order.begin(), order.begin() + 1 + static_cast<long>(uniform_below(rng, 21)), order.end());
        std::vector<std::uint32_t> rotated(order.begin(), order.end());
        worst = std::max(worst, std::abs(len - tsp.fitness(Permutation(rotated))));
        std::reverse(rotated.begin(), rotated.end());
        worst = std::max(worst, std::abs(len - tsp.fitness(Permutation(rotated))));
    }
    v.require(worst < 1e-9, "tsp 1000 tours, max deviation " + sci(worst));
    return v;
}

// 3 -------------------------------------------------------------------------
Verdict acceptance_rule() {
    Verdict v;
    Rng rng(derive_seed({kMasterSeed, 3}));
    for (auto [delta, temp] : {std::pair{-0.5, 1.0}, {-1.0, 0.5}, {-2.0, 1.0}}) {
        int accepted = 0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) accepted += accept_move(delta, temp, rng);
        const double freq = static_cast<double>(accepted) / draws;
        const double expected = std::exp(delta / temp);
        v.require(std::abs(freq - expected) <= 0.02,
                  "d=" + num(delta, 1) + ",T=" + num(temp, 1) + ": " + num(freq, 4) + " vs " + num(expected, 4));
    }
    return v;
}

// 4 -------------------------------------------------------------------------
Verdict cooling_schedule(const ExperimentPlan& plan) {
    Verdict v;
    for (const auto& cell : plan.cells) {
        const auto* sa = std::get_if<SaConfig>(&cell);
        if (!sa) continue;
        const ExponentialSchedule sched{sa->t0, sa->exp_const, sa->min_temp};
        long double worst = 0;
        for (int t = 0; t <= 10000; ++t) {
            const long double oracle = static_cast<long double>(sa->t0) *
                                       std::exp(-static_cast<long double>(sa->exp_const) * t);
            worst = std::max(worst, std::abs(static_cast<long double>(sched.unclamped(t)) - oracle));
            const long double floor = std::max(oracle, static_cast<long double>(sa->min_temp));
            worst = std::max(worst, std::abs(static_cast<long double>(sched.temperature(t)) - floor));
        }
        v.require(worst <= 1e-12L, "c=" + detail::shortest(sa->exp_const) + " max error " +
                                       sci(static_cast<double>(worst)));
    }
    return v;
}

// 5 -------------------------------------------------------------------------
Verdict crossover_locus() {
    Verdict v;
    Rng rng(derive_seed({kMasterSeed, 5}));
    std::size_t bad_bits = 0, bad_random = 0, bad_perm = 0;
    for (int k = 0; k < 10000; ++k) {
        const std::size_t n = 2 + uniform_below(rng, 60);
        const auto a = random_state<BitString>(n, rng);
        const auto b = random_state<BitString>(n, rng);
        const std::size_t point = uniform_below(rng, n + 1);
        const auto child = single_point_crossover(a, b, point);
        for (std::size_t i = 0; i < n; ++i)
            if (child[i] != (i < point ? a[i] : b[i])) {
                ++bad_bits;
                break;
            }
        // The drawn locus is hidden; some p in [1, n-1] must explain the child.
        const auto drawn = crossover(a, b, rng);
        bool explained = false;
        for (std::size_t p = 1; p < n && !explained; ++p) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) ok = drawn[i] == (i < p ? a[i] : b[i]);
            explained = ok;
        }
        bad_random += !explained;

        const auto pa = random_state<Permutation>(n, rng);
        const auto pb = random_state<Permutation>(n, rng);
        bad_perm += !Permutation::is_valid(crossover(pa, pb, rng).view());
    }
    v.require(bad_bits == 0, "explicit locus violations=" + std::to_string(bad_bits) + "/10000");
    v.require(bad_random == 0, "random locus violations=" + std::to_string(bad_random) + "/10000");
    v.require(bad_perm == 0, "invalid permutation children=" + std::to_string(bad_perm) + "/10000");
    return v;
}

// 6 -------------------------------------------------------------------------
std::vector<Sample> samples_from_counts(std::array<int, 4> c) {
    std::vector<Sample> s;
    for (std::uint32_t cell = 0; cell < 4; ++cell)
        for (int k = 0; k < c[cell]; ++k) s.push_back({cell / 2, cell % 2});
    return s;
}

/// Largest spanning-tree weight by decoding every Pruefer sequence.
double exhaustive_max_tree(const SquareMatrix& w) {
    const auto n = w.size();
    if (n == 2) return w(0, 1);
    double best = -1.0;
    std::vector<std::size_t> seq(n - 2, 0);
    while (true) {
        std::vector<std::size_t> degree(n, 1);
        for (auto s : seq) ++degree[s];
        double total = 0.0;
        for (auto s : seq) {
            std::size_t leaf = 0;
            while (degree[leaf] != 1) ++leaf;
            total += w(leaf, s);
            --degree[leaf];
            --degree[s];
        }
        std::size_t u = n, x = n;
        for (std::size_t i = 0; i < n; ++i)
            if (degree[i] == 1) (u == n ? u : x) = i;
        total += w(u, x);
        best = std::max(best, total);
        std::size_t pos = 0;
        while (pos < seq.size() && ++seq[pos] == n) seq[pos++] = 0;
        if (pos == seq.size()) break;
    }
    return best;
}

Verdict mutual_information_and_trees() {
    Verdict v;
    struct Case {
        std::array<int, 4> counts;
        double expected;
    };
    const Case cases[] = {
        {{5, 0, 0, 5}, std::log(2.0)},
        {{3, 1, 1, 3}, 0.75 * std::log(1.5) + 0.25 * std::log(0.5)},
        {{2, 2, 2, 2}, 0.0},
        {{4, 2, 1, 1}, 0.5 * std::log(0.5 / (0.75 * 0.625)) + 0.25 * std::log(0.25 / (0.75 * 0.375)) +
                           0.125 * std::log(0.125 / (0.25 * 0.625)) + 0.125 * std::log(0.125 / (0.25 * 0.375))},
    };
    double worst = 0.0;
    for (const auto& c : cases) {
        const auto s = samples_from_counts(c.counts);
        worst = std::max(worst, std::abs(mutual_information(s, 0, 1, 0.0) - c.expected));
    }
    v.require(worst <= 1e-10, "2x2 MI max error " + sci(worst));

    Rng rng(derive_seed({kMasterSeed, 6}));
    std::size_t bad = 0;
    double gap = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = 2 + uniform_below(rng, 4);
        SquareMatrix w(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) w(i, j) = w(j, i) = uniform01(rng);
        const auto tree = build_dependency_tree(w);
        const double diff = std::abs(tree.weight(w) - exhaustive_max_tree(w));
        gap = std::max(gap, diff);
        bad += diff > 1e-12;
    }
    v.require(bad == 0, "1000 trees n<=5, mismatches=" + std::to_string(bad));
    return v;
}

// 7 -------------------------------------------------------------------------
template <class P>
void check_accounting(Verdict& v, const char* label, const P& problem, std::size_t& runs) {
    const AlgorithmConfig configs[] = {RhcConfig{.restarts = 3}, SaConfig{}, GaConfig{.pop_size = 40},
                                       MimicConfig{.pop_size = 60}};
    for (const auto& cfg : configs) {
        Counted<P> counted{problem};
        Rng rng(derive_seed({kMasterSeed, runs++}));
        const auto rec = run_optimizer(counted, cfg, rng);
        const bool ok = rec.total_fitness_evals == counted.calls->load();
        if (!ok)
            v.require(false, std::string(label) + " " + algorithm_id(cfg) + " counted " +
                                 std::to_string(counted.calls->load()) + " vs " +
                                 std::to_string(rec.total_fitness_evals));
    }
}

bool monotone(const RunRecord& r, Direction d) {
    for (std::size_t i = 1; i < r.curve.size(); ++i)
        if (d == Direction::Maximize ? r.curve[i] < r.curve[i - 1] : r.curve[i] > r.curve[i - 1]) return false;
    return true;
}

Verdict monotonicity_and_accounting(const std::vector<CellSummary>& sweep,
                                    const std::map<std::string, ProblemInfo>& infos) {
    Verdict v;
    std::size_t records = 0, broken = 0;
    for (const auto& s : sweep)
        for (const auto& r : s.records) {
            ++records;
            broken += !monotone(r, infos.at(s.problem_id).direction);
        }
    v.require(broken == 0, "non-monotone curves " + std::to_string(broken) + "/" + std::to_string(records));

    std::size_t runs = 0;
    check_accounting(v, "onemax", OneMax{30}, runs);
    check_accounting(v, "fourpeaks", FourPeaks{{30, 3}}, runs);
    check_accounting(v, "queens", Queens{8}, runs);
    check_accounting(v, "tsp", Tsp(generate_tsp(10, 3)), runs);
    check_accounting(v, "knapsack", Knapsack(generate_knapsack(20, 4)), runs);
    v.require(true, "counted calls match totals for " + std::to_string(runs) + " instrumented runs");
    return v;
}

// Statistical suite -----------------------------------------------------------
class Sweep {
public:
    explicit Sweep(const std::vector<CellSummary>& s) : summaries_(s) {}

    [[nodiscard]] double best(const std::string& problem, const std::string& alg, const std::string& param) const {
        for (const auto& s : summaries_)
            if (s.problem_id == problem && s.algorithm_id == alg && s.param == param) return s.mean_best_fitness;
        throw std::logic_error("no cell " + problem + " " + alg + " " + param);
    }
    [[nodiscard]] double best_default(const std::string& problem, const std::string& alg) const {
        for (const auto& s : summaries_)
            if (s.problem_id == problem && s.algorithm_id == alg && s.is_default) return s.mean_best_fitness;
        throw std::logic_error("no default cell " + problem + " " + alg);
    }
    [[nodiscard]] std::vector<const CellSummary*> cells(const std::string& problem, const std::string& alg) const {
        std::vector<const CellSummary*> out;
        for (const auto& s : summaries_)
            if (s.problem_id == problem && (alg.empty() || s.algorithm_id == alg)) out.push_back(&s);
        return out;
    }

private:
    const std::vector<CellSummary>& summaries_;
};

std::string cell_text(const std::string& alg, const std::string& param, double value) {
    return alg + " " + param + "=" + num(value, 1);
}

Verdict onemax_criterion(const Sweep& w) {
    Verdict v;
    for (const char* p : {"PopSize=100", "PopSize=200", "PopSize=300"}) {
        const double b = w.best("onemax", "GA", p);
        v.require(b == 50.0, cell_text("GA", p, b));
    }
    for (const char* p : {"PopSize=200", "PopSize=300"}) {
        const double b = w.best("onemax", "MIMIC", p);
        v.require(b >= 49.5, cell_text("MIMIC", p, b));
    }
    const double r0 = w.best("onemax", "RHC", "Restarts=0"), r5 = w.best("onemax", "RHC", "Restarts=5"),
                 r10 = w.best("onemax", "RHC", "Restarts=10");
    v.require(r0 <= r5 && r5 <= r10, "RHC " + num(r0, 1) + " <= " + num(r5, 1) + " <= " + num(r10, 1));
    v.require(r10 >= 42.0, cell_text("RHC", "Restarts=10", r10) + " >= 42");
    for (const auto* s : w.cells("onemax", "SA"))
        v.require(s->mean_best_fitness >= 38.0 && s->mean_best_fitness <= 46.0,
                  cell_text("SA", s->param, s->mean_best_fitness) + " in [38,46]");
    return v;
}

Verdict flipflop_criterion(const Sweep& w) {
    Verdict v;
    const double mimic = w.best("flipflop", "MIMIC", "PopSize=300");
    v.require(mimic >= 44.0, cell_text("MIMIC", "PopSize=300", mimic) + " >= 44");
    const double ga = w.best("flipflop", "GA", "PopSize=100");
    v.require(ga >= 41.0, cell_text("GA", "PopSize=100", ga) + " >= 41");
    const double rhc = w.best("flipflop", "RHC", "Restarts=0");
    for (const auto* s : w.cells("flipflop", "SA"))
        v.require(rhc <= s->mean_best_fitness,
                  "RHC0 " + num(rhc, 1) + " <= " + cell_text("SA", s->param, s->mean_best_fitness));
    return v;
}

Verdict fourpeaks_criterion(const Sweep& w) {
    Verdict v;
    const double ga = w.best("fourpeaks", "GA", "PopSize=300");
    v.require(ga >= 70.0, cell_text("GA", "PopSize=300", ga) + " >= 70");
    for (const auto* s : w.cells("fourpeaks", "RHC"))
        v.require(s->mean_best_fitness <= 15.0, cell_text("RHC", s->param, s->mean_best_fitness) + " <= 15");
    const double g = w.best_default("fourpeaks", "GA"), m = w.best_default("fourpeaks", "MIMIC"),
                 sa = w.best_default("fourpeaks", "SA"), r = w.best_default("fourpeaks", "RHC");
    v.require(g >= m, "default GA " + num(g, 1) + " >= MIMIC " + num(m, 1));
    v.require(m >= sa, "default MIMIC " + num(m, 1) + " >= SA " + num(sa, 1));
    v.require(sa >= r, "default SA " + num(sa, 1) + " >= RHC " + num(r, 1));
    return v;
}

Verdict sixpeaks_criterion(const Sweep& w) {
    Verdict v;
    const double ga = w.best("sixpeaks", "GA", "PopSize=200");
    v.require(ga >= 60.0, cell_text("GA", "PopSize=200", ga) + " >= 60");
    for (const auto* s : w.cells("sixpeaks", "RHC"))
        v.require(s->mean_best_fitness <= 15.0, cell_text("RHC", s->param, s->mean_best_fitness) + " <= 15");
    return v;
}

Verdict continuouspeaks_criterion(const Sweep& w) {
    Verdict v;
    double sa = 0.0;
    std::string which;
    for (const auto* s : w.cells("continuouspeaks", "SA"))
        if (s->mean_best_fitness >= sa) {
            sa = s->mean_best_fitness;
            which = s->param;
        }
    v.require(sa >= 55.0, "best SA " + which + "=" + num(sa, 1) + " >= 55");
    const double ga = w.best("continuouspeaks", "GA", "PopSize=200");
    v.require(ga >= 65.0, cell_text("GA", "PopSize=200", ga) + " >= 65");
    return v;
}

Verdict queens_criterion(const Sweep& w) {
    Verdict v;
    const double pairs = 15.0 * 14.0 / 2.0;
    const double mimic = w.best("queens", "MIMIC", "PopSize=300");
    v.require(mimic >= 0.88 * pairs, cell_text("MIMIC", "PopSize=300", mimic) + " >= " + num(0.88 * pairs, 1));
    double lowest = pairs;
    std::string which;
    for (const auto* s : w.cells("queens", ""))
        if (s->mean_best_fitness < lowest) {
            lowest = s->mean_best_fitness;
            which = s->algorithm_id + " " + s->param;
        }
    v.require(lowest >= 0.75 * pairs, "lowest cell " + which + "=" + num(lowest, 1) + " >= " + num(0.75 * pairs, 2));
    return v;
}

Verdict knapsack_criterion(const Sweep& w, const std::map<std::string, ProblemInfo>& infos) {
    Verdict v;
    const double opt = infos.at("knapsack").optimum.value_or(0.0);
    const double ga = w.best("knapsack", "GA", "PopSize=300"), sa = w.best("knapsack", "SA", "ExpConst=0.005"),
                 rhc = w.best("knapsack", "RHC", "Restarts=0");
    v.require(ga >= 0.85 * opt, "GA PopSize=300 " + num(ga, 1) + " >= 0.85 x DP optimum " + num(opt, 0));
    v.require(ga > sa && sa > rhc, "GA " + num(ga, 1) + " > SA " + num(sa, 1) + " > RHC0 " + num(rhc, 1));
    return v;
}

Verdict group_criterion(const GroupSummary& g) {
    Verdict v;
    for (auto group : {ProblemGroup::Binary, ProblemGroup::Permutation, ProblemGroup::Combinatorial}) {
        std::vector<const GroupRank*> ranks;
        for (const auto& r : g.ranking)
            if (r.group == group) ranks.push_back(&r);
        if (ranks.empty()) {
            v.require(false, std::string(to_string(group)) + ": no ranked algorithms");
            continue;
        }
        std::string order;
        for (const auto* r : ranks) order += (order.empty() ? "" : ">") + r->algorithm + "(" + num(r->mean_percent_of_optimum, 1) + "%)";
        const bool first = ranks.front()->algorithm == "GA" || ranks.front()->algorithm == "MIMIC";
        const bool last = ranks.back()->algorithm == "RHC";
        v.require(first && last, std::string(to_string(group)) + ": " + order);
    }
    const auto* mimic = g.find(ProblemGroup::Binary, "MIMIC");
    const auto* ga = g.find(ProblemGroup::Binary, "GA");
    if (mimic && ga)
        v.require(mimic->mean_wall_clock_per_iteration_s > ga->mean_wall_clock_per_iteration_s,
                  "binary wall/iteration MIMIC " + num(mimic->mean_wall_clock_per_iteration_s * 1e3, 3) +
                      "ms > GA " + num(ga->mean_wall_clock_per_iteration_s * 1e3, 3) + "ms (trend)");
    else
        v.require(false, "binary group lacks GA or MIMIC rows");
    return v;
}

Verdict tsp_criterion(const Sweep& w) {
    Verdict v;
    const double ga = w.best("tsp", "GA", "PopSize=300"), rhc = w.best("tsp", "RHC", "Restarts=0");
    v.require(ga < rhc, "GA PopSize=300 tour " + num(ga, 3) + " < RHC0 tour " + num(rhc, 3));
    return v;
}

}  // namespace

int main() {
    std::map<int, std::pair<std::string, std::function<Verdict()>>> criteria;
    const auto plan = default_paper_plan(kMasterSeed);

    const auto started = std::chrono::steady_clock::now();
    std::vector<CellSummary> sweep;
    std::map<std::string, ProblemInfo> infos;
    GroupSummary groups;
    bool swept = false;
    auto ensure_sweep = [&] {
        if (swept) return;
        sweep = run_plan(plan);
        infos = problem_infos(plan);
        groups = compute_group_summary(sweep, infos);
        swept = true;
    };

    criteria[1] = {"fitness oracle equivalence", fitness_oracles};
    criteria[2] = {"queens/knapsack/tsp oracles", structured_oracles};
    criteria[3] = {"annealing acceptance frequency", acceptance_rule};
    criteria[4] = {"exponential cooling schedule", [&] { return cooling_schedule(plan); }};
    criteria[5] = {"crossover locus and permutation validity", crossover_locus};
    criteria[6] = {"mutual information and dependency tree", mutual_information_and_trees};
    criteria[7] = {"monotone curves and evaluation accounting", [&] {
                       ensure_sweep();
                       return monotonicity_and_accounting(sweep, infos);
                   }};
    criteria[8] = {"onemax n=50", [&] { ensure_sweep(); return onemax_criterion(Sweep(sweep)); }};
    criteria[9] = {"flipflop n=50", [&] { ensure_sweep(); return flipflop_criterion(Sweep(sweep)); }};
    criteria[10] = {"fourpeaks n=50 T=5", [&] { ensure_sweep(); return fourpeaks_criterion(Sweep(sweep)); }};
    criteria[11] = {"sixpeaks n=50 T=5", [&] { ensure_sweep(); return sixpeaks_criterion(Sweep(sweep)); }};
    criteria[12] = {"continuouspeaks n=50 T=5", [&] { ensure_sweep(); return continuouspeaks_criterion(Sweep(sweep)); }};
    criteria[13] = {"queens n=15", [&] { ensure_sweep(); return queens_criterion(Sweep(sweep)); }};
    criteria[14] = {"knapsack n=50", [&] { ensure_sweep(); return knapsack_criterion(Sweep(sweep), infos); }};
    criteria[15] = {"cross-group ordering", [&] { ensure_sweep(); return group_criterion(groups); }};
    criteria[16] = {"tsp GA vs RHC direction", [&] { ensure_sweep(); return tsp_criterion(Sweep(sweep)); }};

    int unexpected = 0;
    for (auto& [id, entry] : criteria) {
        Verdict v;
        try {
            v = entry.second();
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const bool known_red = kKnownRed.count(id) > 0;
        const char* tag = v.pass ? (known_red ? "PASS (listed as known red)" : "PASS") : (known_red ? "FAIL (known red)" : "FAIL");
        std::printf("%s %2d %s: %s\n", tag, id, entry.first.c_str(), v.detail.c_str());
        std::fflush(stdout);
        if (v.pass == known_red) ++unexpected;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("seed=%llu trials=%zu elapsed=%.1fs unexpected=%d\n", static_cast<unsigned long long>(kMasterSeed),
                plan.trials, secs, unexpected);
    return unexpected == 0 ? 0 : 1;
}
