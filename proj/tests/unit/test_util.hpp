#pragma once

// Helpers shared by the unit tests. The brute-force matcher here is deliberately
// independent of the library oracle: it enumerates edge subsets directly.

#include "dynmwm/graph.hpp"
#include "dynmwm/matching.hpp"

#include <random>
#include <vector>

namespace testutil {

using namespace dynmwm;

inline Rational R(long p, long q = 1) { return Rational(p, q); }

// Fig. 1 gadget: a-b-c-d with weights 1, 1, 3/2, vertices 0..3.
inline DynamicGraph gadget() {
    DynamicGraph g;
    g.insert_edge(0, 1, R(1));
    g.insert_edge(1, 2, R(1));
    g.insert_edge(2, 3, R(3, 2));
    return g;
}

// Maximum weight over all matchings by subset enumeration (m <= 22).
inline Rational brute_mwm(const DynamicGraph& g) {
    auto es = g.edge_list();
    Rational best = 0;
    const std::size_t m = es.size();
    std::vector<int> used(g.vertex_count() + 1, 0);
    // depth-first over edges, include/exclude
    Rational cur = 0;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == m) {
            if (cur > best) best = cur;
            return;
        }
        self(self, i + 1);
        const auto& e = es[i];
        if (!used[e.u] && !used[e.v]) {
            used[e.u] = used[e.v] = 1;
            cur += e.w;
            self(self, i + 1);
            cur -= e.w;
            used[e.u] = used[e.v] = 0;
        }
    };
    rec(rec, 0);
    return best;
}

inline DynamicGraph random_graph(std::mt19937_64& rng, std::size_t n, double p, long wmax) {
    DynamicGraph g(n);
    std::uniform_real_distribution<double> coin(0, 1);
    std::uniform_int_distribution<long> wd(1, wmax);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng) < p) g.insert_edge(u, v, Rational(wd(rng)));
    return g;
}

inline DynamicGraph random_bipartite(std::mt19937_64& rng, std::size_t half, double p, long wmax) {
    DynamicGraph g(2 * half);
    std::uniform_real_distribution<double> coin(0, 1);
    std::uniform_int_distribution<long> wd(1, wmax);
    for (Vertex u = 0; u < half; ++u)
        for (Vertex v = 0; v < half; ++v)
            if (coin(rng) < p) g.insert_edge(u, static_cast<Vertex>(half + v), Rational(wd(rng)));
    return g;
}

inline std::vector<int> halves(std::size_t half) {
    std::vector<int> side(2 * half, 0);
    for (std::size_t i = half; i < 2 * half; ++i) side[i] = 1;
    return side;
}

}  // namespace testutil
