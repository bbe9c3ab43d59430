#include "dynmwm/adversarial.hpp"
#include "dynmwm/harness.hpp"
#include "dynmwm/oracle.hpp"
#include "dynmwm/unfold.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace dynmwm;

namespace {

using EdgeTuple = std::tuple<Vertex, Vertex, std::string>;

std::vector<EdgeTuple> to_tuples(const std::vector<WeightedEdge>& es) {
    std::vector<EdgeTuple> out;
    for (const auto& e : es) out.emplace_back(e.u, e.v, format_rational(e.w));
    return out;
}

DynamicGraph from_tuples(const std::vector<EdgeTuple>& es) {
    DynamicGraph g;
    for (const auto& [u, v, w] : es) g.insert_edge(u, v, parse_rational(w));
    return g;
}

py::tuple delta_tuple(const MatchingDelta& d) { return py::make_tuple(to_tuples(d.removed), to_tuples(d.added)); }

class PySolver {
  public:
    PySolver(const std::string& solver, const std::string& eps, const std::string& inner, int depth,
             const std::string& unit, const std::string& max_weight, std::size_t max_degree) {
        SolverConfig cfg;
        cfg.solver = solver;
        cfg.eps = parse_rational(eps);
        cfg.inner = inner;
        cfg.depth = depth;
        cfg.weight_unit = parse_rational(unit);
        cfg.max_weight = parse_rational(max_weight);
        cfg.max_degree = max_degree;
        s_ = make_solver(cfg);
    }
    std::string name() const { return s_->name(); }
    py::tuple insert(Vertex u, Vertex v, const std::string& w) {
        return delta_tuple(s_->update(make_insert(u, v, parse_rational(w), ++seq_)));
    }
    py::tuple erase(Vertex u, Vertex v) {
        auto w = s_->graph().find_weight(make_key(u, v));
        if (!w) throw UpdateError("delete of missing edge");
        return delta_tuple(s_->update(make_erase(u, v, *w, ++seq_)));
    }
    std::vector<EdgeTuple> matching() const { return to_tuples(s_->matching().edge_list()); }
    std::string weight() const { return format_rational(s_->matching().weight()); }
    std::optional<Vertex> vertex_match(Vertex v) const { return s_->vertex_match(v); }

  private:
    std::unique_ptr<DynamicSolver> s_;
    std::uint64_t seq_ = 0;
};

}  // namespace

PYBIND11_MODULE(_dynmwm, m) {
    py::register_exception<UpdateError>(m, "UpdateError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<PySolver>(m, "Solver")
        .def(py::init<const std::string&, const std::string&, const std::string&, int, const std::string&,
                      const std::string&, std::size_t>(),
             py::arg("solver") = "oracle", py::arg("eps") = "1/10", py::arg("inner") = "oracle", py::arg("depth") = 1,
             py::arg("unit") = "1", py::arg("max_weight") = "1000000", py::arg("max_degree") = 0)
        .def_property_readonly("name", &PySolver::name)
        .def("insert", &PySolver::insert)
        .def("erase", &PySolver::erase)
        .def("matching", &PySolver::matching)
        .def("weight", &PySolver::weight)
        .def("vertex_match", &PySolver::vertex_match);

    m.def("registered_solvers", &registered_solvers);

    m.def("mwm", [](const std::vector<EdgeTuple>& edges) {
        Matching mm = mwm_best_exact(from_tuples(edges));
        return py::make_tuple(format_rational(mm.weight()), to_tuples(mm.edge_list()));
    });

    m.def("mcm_size", [](const std::vector<EdgeTuple>& edges) { return mcm_size(from_tuples(edges)); });

    m.def(
        "gen_trace",
        [](const std::string& model, std::size_t n, std::size_t events, std::uint64_t seed, long lo, long hi,
           std::size_t max_degree, bool bipartite, std::size_t window, long levels) {
            TraceModel tm;
            tm.kind = parse_model_kind(model);
            tm.n = n;
            tm.events = events;
            tm.seed = seed;
            tm.weights.lo = lo;
            tm.weights.hi = hi;
            tm.max_degree = max_degree;
            tm.bipartite = bipartite;
            tm.window = window;
            tm.gadget_levels = levels;
            std::vector<std::tuple<std::string, Vertex, Vertex, std::string, std::uint64_t>> out;
            for (const auto& ev : gen_trace(tm))
                out.emplace_back(ev.kind == UpdateKind::insert ? "i" : "d", ev.edge.u, ev.edge.v,
                                 format_rational(ev.edge.w), ev.seq);
            return out;
        },
        py::arg("model") = "uniform-random", py::arg("n") = 12, py::arg("events") = 100, py::arg("seed") = 1,
        py::arg("lo") = 1, py::arg("hi") = 100, py::arg("max_degree") = 0, py::arg("bipartite") = false,
        py::arg("window") = 5, py::arg("levels") = 4);

    m.def(
        "run_trace",
        [](const std::string& solver, const std::vector<std::tuple<std::string, Vertex, Vertex, std::string,
                                                                   std::uint64_t>>& trace,
           const std::string& eps, const std::string& inner, int depth, const std::string& max_weight,
           std::size_t max_degree, bool oracle_audit) {
            SolverConfig cfg;
            cfg.solver = solver;
            cfg.eps = parse_rational(eps);
            cfg.inner = inner;
            cfg.depth = depth;
            cfg.max_weight = parse_rational(max_weight);
            cfg.max_degree = max_degree;
            auto s = make_solver(cfg);
            std::vector<UpdateEvent> evs;
            for (const auto& [op, u, v, w, seq] : trace) {
                if (op != "i" && op != "d") throw std::invalid_argument("op must be 'i' or 'd'");
                evs.push_back(op == "i" ? make_insert(u, v, parse_rational(w), seq)
                                        : make_erase(u, v, parse_rational(w), seq));
            }
            RunOptions opts;
            opts.oracle_audit = oracle_audit;
            SolverReport r = run_trace(*s, evs, opts);
            std::ostringstream csv;
            write_metrics(csv, r);
            return py::make_tuple(report_summary_json(r), csv.str());
        },
        py::arg("solver"), py::arg("trace"), py::arg("eps") = "1/10", py::arg("inner") = "oracle",
        py::arg("depth") = 1, py::arg("max_weight") = "1000000", py::arg("max_degree") = 0,
        py::arg("oracle_audit") = false);

    m.def("unfold_stats", [](const std::vector<EdgeTuple>& edges, long W) {
        DynamicGraph g = from_tuples(edges);
        UnfoldedGraph u = unfold(g, W);
        return py::make_tuple(u.graph.vertex_count(), u.graph.edge_count(), mcm_size(u.graph));
    });

    m.def("certify_partition", [](long N, const std::string& delta) {
        auto inst = gen_partition_counterexample(N);
        auto v = certify_all_narrow_partitions(inst, parse_rational(delta));
        py::dict d;
        d["feasible"] = v.feasible;
        d["violations"] = v.violations;
        d["min_loss"] = format_rational(v.min_loss);
        d["threshold"] = format_rational(v.threshold);
        d["holds"] = v.holds();
        return d;
    });

    m.def(
        "certify_alpha",
        [](const std::string& alpha, long N, const std::string& delta, long multiplier) {
            Rational a = parse_rational(alpha);
            auto inst = gen_alpha_counterexample(a, N, multiplier);
            auto v = certify_alpha_counterexample(inst, a, parse_rational(delta));
            py::dict d;
            d["ratio"] = format_rational(v.ratio);
            d["formula_ratio"] = format_rational(v.formula_ratio);
            d["classes_checked"] = v.classes_checked;
            d["class_failures"] = v.class_failures;
            d["holds"] = v.holds();
            return d;
        },
        py::arg("alpha") = "2/3", py::arg("N") = 6, py::arg("delta") = "1/63", py::arg("multiplier") = 3);
}
