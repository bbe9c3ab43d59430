#include "dynmwm/adversarial.hpp"
#include "dynmwm/harness.hpp"
#include "dynmwm/trace.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>

using namespace dynmwm;

namespace {

WeightDist parse_weights(const std::string& spec) {
    // uniform:LO:HI or geometric:BASE:LEVELS
    WeightDist d;
    auto a = spec.find(':');
    auto b = spec.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) throw std::invalid_argument("bad --weights '" + spec + "'");
    std::string kind = spec.substr(0, a), x = spec.substr(a + 1, b - a - 1), y = spec.substr(b + 1);
    if (kind == "uniform") {
        d.kind = WeightDistKind::uniform_int;
        d.lo = std::stol(x);
        d.hi = std::stol(y);
    } else if (kind == "geometric") {
        d.kind = WeightDistKind::geometric;
        d.base = parse_rational(x);
        d.levels = std::stol(y);
    } else {
        throw std::invalid_argument("bad --weights kind '" + kind + "'");
    }
    return d;
}

struct RunArgs {
    std::string solver = "oracle";
    std::string eps = "1/10";
    std::string inner = "oracle";
    int depth = 1;
    std::string unit = "1";
    std::string max_weight = "1000000";
    std::size_t max_degree = 0;
    bool audit = false;
    std::string trace;
    std::string out;
    std::string min_ratio;
    std::uint64_t seed = 1;
};

void add_run_flags(CLI::App* cmd, RunArgs& a) {
    cmd->add_option("--solver", a.solver, "solver name")->capture_default_str();
    cmd->add_option("--eps", a.eps, "epsilon (rational)")->capture_default_str();
    cmd->add_option("--inner", a.inner, "inner solver for framework modes")->capture_default_str();
    cmd->add_option("--depth", a.depth, "tree depth for framework/tree")->capture_default_str();
    cmd->add_option("--unit", a.unit, "smallest admissible weight")->capture_default_str();
    cmd->add_option("--max-weight", a.max_weight, "largest admissible weight")->capture_default_str();
    cmd->add_option("--max-degree", a.max_degree, "degree cap (low-degree)")->capture_default_str();
    cmd->add_option("--trace", a.trace, "trace file")->required();
    cmd->add_option("--out", a.out, "metrics CSV path");
    cmd->add_option("--seed", a.seed, "unused by deterministic solvers; echoed in the summary");
}

int do_run(const RunArgs& a, bool audit_mode) {
    SolverConfig cfg;
    cfg.solver = a.solver;
    cfg.eps = parse_rational(a.eps);
    cfg.inner = a.inner;
    cfg.depth = a.depth;
    cfg.weight_unit = parse_rational(a.unit);
    cfg.max_weight = parse_rational(a.max_weight);
    cfg.max_degree = a.max_degree;
    auto solver = make_solver(cfg);
    auto trace = read_trace_file(a.trace);
    RunOptions opts;
    opts.oracle_audit = a.audit || audit_mode;
    SolverReport r = run_trace(*solver, trace, opts);
    r.config = "solver=" + a.solver + " eps=" + a.eps + " inner=" + a.inner + " depth=" + std::to_string(a.depth) +
               " unit=" + a.unit + " max_weight=" + a.max_weight + " seed=" + std::to_string(a.seed);
    if (!a.out.empty()) write_metrics_file(a.out, r);
    std::cout << report_summary_json(r) << "\n";
    if (r.invariant_failure) {
        std::cerr << "error: " << r.error << "\n";
        return 1;
    }
    if (audit_mode && !a.min_ratio.empty() && r.min_ratio && *r.min_ratio < parse_rational(a.min_ratio)) {
        std::cerr << "audit failed: min ratio " << format_rational(*r.min_ratio) << " < " << a.min_ratio << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic approximate maximum weight matching toolkit"};
    app.require_subcommand(1);

    TraceModel model;
    std::string model_name = "uniform-random", weights = "uniform:1:100", gen_out;
    auto* gen = app.add_subcommand("gen", "generate a trace");
    gen->add_option("--model", model_name, "uniform-random|insert-only|delete-only|sliding-window|adversarial-gadget")
        ->capture_default_str();
    gen->add_option("--n", model.n, "vertex count")->capture_default_str();
    gen->add_option("--events", model.events, "event count")->capture_default_str();
    gen->add_option("--seed", model.seed, "generator seed")->capture_default_str();
    gen->add_option("--weights", weights, "uniform:LO:HI or geometric:BASE:LEVELS")->capture_default_str();
    gen->add_option("--insert-percent", model.insert_percent, "insert probability in percent")->capture_default_str();
    gen->add_option("--window", model.window, "sliding window width")->capture_default_str();
    gen->add_option("--max-degree", model.max_degree, "degree cap, 0 for none")->capture_default_str();
    gen->add_flag("--bipartite", model.bipartite, "only edges between [0,n/2) and [n/2,n)");
    gen->add_option("--levels", model.gadget_levels, "gadget levels N")->capture_default_str();
    gen->add_option("--out", gen_out, "trace path (stdout if omitted)");

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "replay a trace against a solver");
    add_run_flags(run, run_args);
    run->add_flag("--oracle-audit", run_args.audit, "compare against the exact oracle each step");

    RunArgs audit_args;
    auto* audit = app.add_subcommand("audit", "replay with oracle audit and a ratio threshold");
    add_run_flags(audit, audit_args);
    audit->add_option("--min-ratio", audit_args.min_ratio, "fail when the ratio drops below this");

    std::string gadget_kind = "partition", delta = "1/10", alpha = "2/3", gadget_out;
    long gadget_n = 20, multiplier = 3;
    auto* gadget = app.add_subcommand("gadget", "lower-bound instances and certificates");
    gadget->add_option("--kind", gadget_kind, "partition|alpha")->capture_default_str();
    gadget->add_option("--N", gadget_n, "levels")->capture_default_str();
    gadget->add_option("--delta", delta, "loss tolerance delta")->capture_default_str();
    gadget->add_option("--alpha", alpha, "approximation factor (alpha kind)")->capture_default_str();
    gadget->add_option("--multiplier", multiplier, "gadget count multiplier (alpha kind)")->capture_default_str();
    gadget->add_option("--out", gadget_out, "write the instance as an insert trace");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            model.kind = parse_model_kind(model_name);
            model.weights = parse_weights(weights);
            auto trace = gen_trace(model);
            if (gen_out.empty()) write_trace(std::cout, trace);
            else write_trace_file(gen_out, trace);
            return 0;
        }
        if (*run) return do_run(run_args, false);
        if (*audit) return do_run(audit_args, true);
        if (*gadget) {
            Rational d = parse_rational(delta);
            nlohmann::ordered_json j;
            GadgetInstance inst;
            if (gadget_kind == "partition") {
                inst = gen_partition_counterexample(gadget_n);
                auto v = certify_all_narrow_partitions(inst, d);
                j["kind"] = "partition";
                j["N"] = gadget_n;
                j["delta"] = format_rational(d);
                j["mu"] = format_rational(inst.mu());
                j["cap_exponent"] = format_rational(v.cap_exponent);
                j["feasible_partitions"] = v.feasible;
                j["violations"] = v.violations;
                j["min_loss"] = format_rational(v.min_loss);
                j["threshold"] = format_rational(v.threshold);
                j["holds"] = v.holds();
            } else if (gadget_kind == "alpha") {
                Rational a = parse_rational(alpha);
                inst = gen_alpha_counterexample(a, gadget_n, multiplier);
                auto v = certify_alpha_counterexample(inst, a, d);
                j["kind"] = "alpha";
                j["N"] = gadget_n;
                j["alpha"] = format_rational(a);
                j["delta"] = format_rational(d);
                j["ratio"] = format_rational(v.ratio);
                j["formula_ratio"] = format_rational(v.formula_ratio);
                j["classes_checked"] = v.classes_checked;
                j["class_failures"] = v.class_failures;
                j["holds"] = v.holds();
            } else {
                throw std::invalid_argument("unknown gadget kind '" + gadget_kind + "'");
            }
            if (!gadget_out.empty()) write_trace_file(gadget_out, as_insert_trace(inst));
            std::cout << j.dump(2) << "\n";
            return j["holds"].get<bool>() ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
