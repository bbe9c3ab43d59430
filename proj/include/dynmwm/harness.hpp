#pragma once

#include "dynmwm/oracle.hpp"
#include "dynmwm/solver.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dynmwm {

// All trace randomness comes from one std::mt19937_64 seeded with TraceModel::seed.
// Bounded draws use rng() % n so streams are identical across standard libraries.
using TraceRng = std::mt19937_64;
std::uint64_t draw_below(TraceRng& rng, std::uint64_t n);

enum class TraceModelKind { uniform_random, insert_only, delete_only, sliding_window, adversarial_gadget };

enum class WeightDistKind { uniform_int, geometric };

struct WeightDist {
    WeightDistKind kind = WeightDistKind::uniform_int;
    long lo = 1;      // uniform_int: integers in [lo, hi]
    long hi = 100;
    Rational base = 2;  // geometric: base^k for k uniform in [0, levels]
    long levels = 10;
    Rational draw(TraceRng& rng) const;
};

struct TraceModel {
    TraceModelKind kind = TraceModelKind::uniform_random;
    std::size_t n = 12;
    std::size_t events = 1000;
    WeightDist weights;
    std::uint64_t seed = 1;
    // Probability (in percent) that uniform_random tries an insertion.
    unsigned insert_percent = 60;
    std::size_t window = 5;        // sliding_window
    std::size_t max_degree = 0;    // 0: no cap
    bool bipartite = false;        // sides [0, n/2) and [n/2, n)
    long gadget_levels = 4;        // adversarial_gadget
};

TraceModelKind parse_model_kind(const std::string& s);
std::string model_kind_name(TraceModelKind k);

// Deterministic under the seed. Throws std::invalid_argument on a malformed model.
std::vector<UpdateEvent> gen_trace(const TraceModel& model);

struct SolverConfig {
    std::string solver = "oracle";
    Rational eps = Rational(1, 10);
    std::string inner = "oracle";
    int depth = 1;
    Rational weight_unit = 1;
    Rational max_weight = 1000000;
    std::size_t max_degree = 0;
};

// framework/standard, framework/tree(d), framework/ultimate, census-only, degree-two,
// low-recourse(X), bdl, low-degree, oracle, oracle-churn.
std::vector<std::string> registered_solvers();
// Throws std::invalid_argument for unknown names.
std::unique_ptr<DynamicSolver> make_solver(const SolverConfig& cfg);

struct StepRecord {
    std::uint64_t seq = 0;
    UpdateEvent event;
    Rational weight;
    std::size_t size = 0;
    std::size_t recourse = 0;
    std::optional<Rational> opt;
};

struct RunOptions {
    bool oracle_audit = false;
    OracleBudget budget = OracleBudget::from_env();
};

struct SolverReport {
    std::string solver;
    std::string config;
    std::vector<StepRecord> steps;
    std::uint64_t total_recourse = 0;
    std::size_t audited = 0;
    std::size_t skipped_audits = 0;
    std::optional<Rational> min_ratio;
    double mean_ratio = 1.0;
    bool invariant_failure = false;
    std::string error;
    double wall_seconds = 0;

    Rational amortized_recourse() const;
};

// Replays the trace. Illegal events and broken output invariants stop the run and are
// recorded in `error`.
SolverReport run_trace(DynamicSolver& solver, const std::vector<UpdateEvent>& trace, const RunOptions& opts = {});

// Fixed header, one row per update. Contains no timing so reruns are byte-identical.
void write_metrics(std::ostream& out, const SolverReport& r);
void write_metrics_file(const std::string& path, const SolverReport& r);
std::string report_summary_json(const SolverReport& r);

}  // namespace dynmwm
