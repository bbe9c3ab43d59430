#include "dynmwm/harness.hpp"

#include "dynmwm/adversarial.hpp"
#include "dynmwm/census.hpp"
#include "dynmwm/degree_two.hpp"
#include "dynmwm/framework.hpp"
#include "dynmwm/low_degree.hpp"
#include "dynmwm/low_recourse.hpp"
#include "dynmwm/trace.hpp"
#include "dynmwm/unfold.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <deque>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace dynmwm {

std::uint64_t draw_below(TraceRng& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("draw from an empty range");
    return rng() % n;
}

Rational WeightDist::draw(TraceRng& rng) const {
    if (kind == WeightDistKind::uniform_int)
        return Rational(lo + static_cast<long>(draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1))));
    return rational_pow(base, static_cast<long>(draw_below(rng, static_cast<std::uint64_t>(levels + 1))));
}

TraceModelKind parse_model_kind(const std::string& s) {
    if (s == "uniform-random") return TraceModelKind::uniform_random;
    if (s == "insert-only") return TraceModelKind::insert_only;
    if (s == "delete-only") return TraceModelKind::delete_only;
    if (s == "sliding-window") return TraceModelKind::sliding_window;
    if (s == "adversarial-gadget") return TraceModelKind::adversarial_gadget;
    throw std::invalid_argument("unknown trace model '" + s + "'");
}

std::string model_kind_name(TraceModelKind k) {
    switch (k) {
        case TraceModelKind::uniform_random:
            return "uniform-random";
        case TraceModelKind::insert_only:
            return "insert-only";
        case TraceModelKind::delete_only:
            return "delete-only";
        case TraceModelKind::sliding_window:
            return "sliding-window";
        case TraceModelKind::adversarial_gadget:
            return "adversarial-gadget";
    }
    return "?";
}

namespace {

class TraceBuilder {
  public:
    explicit TraceBuilder(const TraceModel& m) : m_(m), rng_(m.seed), g_(m.n) {}

    bool can_insert(Vertex a, Vertex b) const {
        if (a == b || g_.has_edge(a, b)) return false;
        if (m_.max_degree && (g_.degree(a) >= m_.max_degree || g_.degree(b) >= m_.max_degree)) return false;
        if (m_.bipartite && (a < m_.n / 2) == (b < m_.n / 2)) return false;
        return true;
    }

    bool insert_random() {
        std::optional<EdgeKey> pick;
        for (int attempt = 0; attempt < 64 && !pick; ++attempt) {
            Vertex a = static_cast<Vertex>(draw_below(rng_, m_.n));
            Vertex b = static_cast<Vertex>(draw_below(rng_, m_.n));
            if (can_insert(a, b)) pick = make_key(a, b);
        }
        if (!pick) {
            std::vector<EdgeKey> cand;
            for (Vertex a = 0; a < m_.n; ++a)
                for (Vertex b = a + 1; b < m_.n; ++b)
                    if (can_insert(a, b)) cand.push_back(make_key(a, b));
            if (cand.empty()) return false;
            pick = cand[draw_below(rng_, cand.size())];
        }
        Rational w = m_.weights.draw(rng_);
        emit(make_insert(pick->u, pick->v, w));
        return true;
    }

    void erase(const EdgeKey& k) { emit(make_erase(k.u, k.v, g_.weight(k))); }

    bool erase_random() {
        if (g_.edge_count() == 0) return false;
        auto it = g_.edges().begin();
        std::advance(it, static_cast<long>(draw_below(rng_, g_.edge_count())));
        erase(it->first);
        return true;
    }

    void emit(UpdateEvent ev) {
        ev.seq = out_.size() + 1;
        apply_update(g_, ev);
        out_.push_back(ev);
    }

    TraceRng& rng() { return rng_; }
    EdgeKey last_key() const { return out_.back().edge.key(); }
    const DynamicGraph& graph() const { return g_; }
    std::vector<UpdateEvent> take() { return std::move(out_); }

  private:
    const TraceModel& m_;
    TraceRng rng_;
    DynamicGraph g_;
    std::vector<UpdateEvent> out_;
};

}  // namespace

std::vector<UpdateEvent> gen_trace(const TraceModel& m) {
    if (m.kind == TraceModelKind::adversarial_gadget) return as_insert_trace(gen_partition_counterexample(m.gadget_levels));
    if (m.n < 2) throw std::invalid_argument("trace model needs n >= 2");
    if (m.insert_percent > 100) throw std::invalid_argument("insert_percent must be at most 100");
    if (m.weights.kind == WeightDistKind::uniform_int && !(1 <= m.weights.lo && m.weights.lo <= m.weights.hi))
        throw std::invalid_argument("uniform weights need 1 <= lo <= hi");
    if (m.weights.kind == WeightDistKind::geometric && !(m.weights.base > 1 && m.weights.levels >= 0))
        throw std::invalid_argument("geometric weights need base > 1 and levels >= 0");
    if (m.kind == TraceModelKind::sliding_window && m.window == 0)
        throw std::invalid_argument("sliding window needs a positive width");
    TraceBuilder b(m);
    switch (m.kind) {
        case TraceModelKind::uniform_random:
            for (std::size_t t = 0; t < m.events; ++t) {
                bool ins = b.graph().edge_count() == 0 || draw_below(b.rng(), 100) < m.insert_percent;
                if (ins && b.insert_random()) continue;
                if (!b.erase_random()) break;
            }
            break;
        case TraceModelKind::insert_only:
            for (std::size_t t = 0; t < m.events; ++t)
                if (!b.insert_random()) break;
            break;
        case TraceModelKind::delete_only: {
            for (std::size_t t = 0; t < m.events; ++t)
                if (!b.insert_random()) break;
            std::vector<EdgeKey> keys;
            for (const auto& [k, w] : b.graph().edges()) keys.push_back(k);
            for (std::size_t i = keys.size(); i > 1; --i) std::swap(keys[i - 1], keys[draw_below(b.rng(), i)]);
            for (const auto& k : keys) b.erase(k);
            break;
        }
        case TraceModelKind::sliding_window: {
            std::deque<EdgeKey> live;
            std::size_t inserted = 0;
            while (inserted < m.events) {
                if (live.size() == m.window) {
                    b.erase(live.front());
                    live.pop_front();
                }
                if (!b.insert_random()) break;
                live.push_back(b.last_key());
                ++inserted;
            }
            break;
        }
        case TraceModelKind::adversarial_gadget:
            break;
    }
    return b.take();
}

namespace {

// Census over disjoint base-1/eps weight buckets with an exact solver per bucket.
class CensusOnlySolver : public DynamicSolver {
  public:
    CensusOnlySolver(Rational eps, Rational unit, Rational max_weight)
        : base_(1 / eps), unit_(std::move(unit)), max_weight_(std::move(max_weight)) {
        if (!(eps > 0 && eps < 1)) throw std::invalid_argument("census-only needs 0 < eps < 1");
        long k = floor_log(max_weight_ / unit_, base_) + 1;
        std::vector<WeightInterval> iv;
        for (long j = 0; j < k; ++j) {
            iv.emplace_back(unit_ * rational_pow(base_, j), unit_ * rational_pow(base_, j + 1));
            inner_.push_back(std::make_unique<OracleSolver>());
        }
        census_ = std::make_unique<Census>(static_cast<std::size_t>(k), iv);
    }
    std::string name() const override { return "census-only"; }
    const Matching& matching() const override { return census_->matching(); }
    const DynamicGraph& graph() const override { return graph_; }
    MatchingDelta update(const UpdateEvent& ev) override {
        const Rational& w = ev.edge.w;
        if (w < unit_ || w > max_weight_) throw UpdateError("weight outside the configured range");
        apply_update(graph_, ev);
        std::size_t j = static_cast<std::size_t>(floor_log(w / unit_, base_));
        MatchingDelta d = inner_[j]->update(ev);
        DeltaAccumulator acc;
        for (const auto& e : d.removed) acc.add(census_->erase(j + 1, e.key()));
        for (const auto& e : d.added) acc.add(census_->insert(j + 1, e));
        return acc.take();
    }

  private:
    Rational base_, unit_, max_weight_;
    DynamicGraph graph_;
    std::vector<std::unique_ptr<DynamicSolver>> inner_;
    std::unique_ptr<Census> census_;
};

InnerFactory inner_factory(const SolverConfig& cfg) {
    if (cfg.inner == "oracle") return oracle_inner(false);
    if (cfg.inner == "oracle-churn") return oracle_inner(true);
    if (cfg.inner == "low-recourse") {
        return [](const InnerSpec& spec) -> std::unique_ptr<DynamicSolver> {
            return std::make_unique<LowRecourseSolver>(std::make_unique<OracleSolver>(OracleKind::best, true),
                                                       spec.eps, spec.aspect_ratio);
        };
    }
    throw std::invalid_argument("unknown inner solver '" + cfg.inner + "'");
}

}  // namespace

std::vector<std::string> registered_solvers() {
    return {"framework/standard", "framework/tree(d)", "framework/ultimate", "census-only", "degree-two",
            "low-recourse(X)",    "bdl",               "low-degree",         "oracle",      "oracle-churn"};
}

std::unique_ptr<DynamicSolver> make_solver(const SolverConfig& cfg) {
    const std::string& s = cfg.solver;
    if (s == "oracle") return std::make_unique<OracleSolver>(OracleKind::best, false);
    if (s == "oracle-churn") return std::make_unique<OracleSolver>(OracleKind::best, true);
    if (s == "degree-two") return std::make_unique<DegreeTwoSolver>(cfg.eps);
    if (s == "census-only") return std::make_unique<CensusOnlySolver>(cfg.eps, cfg.weight_unit, cfg.max_weight);
    if (s == "bdl") {
        if (denominator(cfg.max_weight) != 1) throw std::invalid_argument("bdl needs an integer max weight");
        return std::make_unique<BdlSolver>(cfg.eps, numerator(cfg.max_weight).convert_to<long>());
    }
    if (s == "low-degree") {
        if (cfg.max_degree == 0) throw std::invalid_argument("low-degree needs --max-degree");
        return make_low_degree_solver(cfg.eps, cfg.max_degree, cfg.weight_unit, cfg.max_weight);
    }
    std::smatch m;
    static const std::regex lr(R"(low-recourse(?:\((.+)\))?)");
    if (std::regex_match(s, m, lr)) {
        SolverConfig in = cfg;
        in.solver = m[1].matched ? m[1].str() : cfg.inner;
        return std::make_unique<LowRecourseSolver>(make_solver(in), cfg.eps, cfg.max_weight);
    }
    static const std::regex fw(R"(framework/(standard|ultimate|tree(?:\((\d+)\))?))");
    if (std::regex_match(s, m, fw)) {
        FrameworkConfig fc;
        fc.eps = cfg.eps;
        fc.weight_unit = cfg.weight_unit;
        fc.max_weight = cfg.max_weight;
        fc.max_degree = cfg.max_degree;
        fc.inner = inner_factory(cfg);
        if (m[1] == "standard") {
            fc.mode = FrameworkMode::standard;
        } else if (m[1] == "ultimate") {
            fc.mode = FrameworkMode::ultimate;
        } else {
            fc.mode = FrameworkMode::tree;
            fc.depth = m[2].matched ? std::stoi(m[2].str()) : cfg.depth;
        }
        return std::make_unique<FrameworkSolver>(std::move(fc));
    }
    throw std::invalid_argument("unknown solver '" + s + "'");
}

Rational SolverReport::amortized_recourse() const {
    if (steps.empty()) return 0;
    return Rational(total_recourse) / Rational(steps.size());
}

SolverReport run_trace(DynamicSolver& solver, const std::vector<UpdateEvent>& trace, const RunOptions& opts) {
    SolverReport r;
    r.solver = solver.name();
    auto t0 = std::chrono::steady_clock::now();
    Matching prev = solver.matching();
    double ratio_sum = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const UpdateEvent& ev = trace[i];
        StepRecord rec;
        rec.seq = ev.seq ? ev.seq : i + 1;
        rec.event = ev;
        try {
            MatchingDelta d = solver.update(ev);
            const Matching& cur = solver.matching();
            Matching replayed = prev;
            apply_delta(replayed, d);
            if (!(replayed == cur)) throw std::logic_error("returned delta does not reproduce the matching");
            if (diff(prev, cur).recourse() != d.recourse())
                throw std::logic_error("returned delta is not the symmetric difference");
            if (!is_valid_matching(cur) || !is_subgraph_matching(cur, solver.graph()))
                throw std::logic_error("output is not a matching of the current graph");
            rec.recourse = d.recourse();
            rec.weight = cur.weight();
            rec.size = cur.size();
            prev = cur;
        } catch (const std::exception& e) {
            r.invariant_failure = true;
            r.error = "event " + std::to_string(rec.seq) + " (" + format_event(ev) + "): " + e.what();
            break;
        }
        r.total_recourse += rec.recourse;
        if (opts.oracle_audit) {
            try {
                rec.opt = mwm_value(solver.graph(), opts.budget);
                Rational ratio = *rec.opt == 0 ? Rational(1) : rec.weight / *rec.opt;
                if (!r.min_ratio || ratio < *r.min_ratio) r.min_ratio = ratio;
                ratio_sum += to_double(ratio);
                ++r.audited;
            } catch (const BudgetExceeded&) {
                ++r.skipped_audits;
            }
        }
        r.steps.push_back(std::move(rec));
    }
    if (r.audited) r.mean_ratio = ratio_sum / static_cast<double>(r.audited);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

namespace {

std::string fixed9(const Rational& x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", to_double(x));
    return buf;
}

}  // namespace

void write_metrics(std::ostream& out, const SolverReport& r) {
    out << "seq,op,u,v,w,matching_weight,matching_size,recourse,opt,ratio\n";
    for (const auto& s : r.steps) {
        out << s.seq << ',' << (s.event.kind == UpdateKind::insert ? 'i' : 'd') << ',' << s.event.edge.u << ','
            << s.event.edge.v << ',' << format_rational(s.event.edge.w) << ',' << format_rational(s.weight) << ','
            << s.size << ',' << s.recourse << ',';
        if (s.opt) {
            Rational ratio = *s.opt == 0 ? Rational(1) : s.weight / *s.opt;
            out << format_rational(*s.opt) << ',' << fixed9(ratio);
        } else {
            out << ',';
        }
        out << '\n';
    }
}

void write_metrics_file(const std::string& path, const SolverReport& r) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_metrics(f, r);
}

std::string report_summary_json(const SolverReport& r) {
    nlohmann::ordered_json j;
    j["solver"] = r.solver;
    if (!r.config.empty()) j["config"] = r.config;
    j["events"] = r.steps.size();
    j["total_recourse"] = r.total_recourse;
    j["amortized_recourse"] = format_rational(r.amortized_recourse());
    j["audited"] = r.audited;
    j["skipped_audits"] = r.skipped_audits;
    if (r.min_ratio) {
        j["min_ratio"] = format_rational(*r.min_ratio);
        j["min_ratio_decimal"] = to_double(*r.min_ratio);
        j["mean_ratio"] = r.mean_ratio;
    } else {
        j["min_ratio"] = nullptr;  // no audited step
    }
    j["wall_seconds"] = r.wall_seconds;  // the only nondeterministic field; kept out of the metrics CSV
    j["ok"] = !r.invariant_failure;
    if (!r.error.empty()) j["error"] = r.error;
    return j.dump(2);
}

}  // namespace dynmwm
