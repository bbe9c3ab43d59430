#include "dynmwm/oracle.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <boost/graph/maximum_weighted_matching.hpp>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

namespace dynmwm {

OracleBudget OracleBudget::from_env() {
    OracleBudget b;
    const char* env = std::getenv("DYNMWM_ORACLE_BUDGET");
    if (!env) return b;
    std::string s(env);
    auto comma = s.find(',');
    std::string g = s.substr(0, comma);
    std::string p = comma == std::string::npos ? "" : s.substr(comma + 1);
    if (!g.empty()) b.max_vertices_general = std::stoul(g);
    if (!p.empty()) b.max_vertices_bipartite = std::stoul(p);
    if (b.max_vertices_general > 20)
        throw std::invalid_argument("general oracle budget may not exceed 20 vertices");
    return b;
}

namespace {

// Scales weights to integers when the result (and any sum of n of them) fits in int64.
bool scale_to_int(const std::vector<Rational>& ws, std::size_t n, std::vector<long long>& out) {
    BigInt l = 1;
    for (const auto& w : ws) l = boost::multiprecision::lcm(l, BigInt(denominator(w)));
    BigInt cap = (BigInt(1) << 60) / BigInt(n + 2);
    out.clear();
    out.reserve(ws.size());
    for (const auto& w : ws) {
        BigInt s = numerator(w) * (l / denominator(w));
        if (s > cap) return false;
        out.push_back(s.convert_to<long long>());
    }
    return true;
}

template <class V>
std::vector<std::pair<int, int>> subset_dp(int n, const std::vector<std::vector<std::pair<int, V>>>& adj) {
    std::size_t states = std::size_t(1) << n;
    std::vector<V> f(states, V(0));
    std::vector<signed char> choice(states, -1);
    for (std::size_t mask = 1; mask < states; ++mask) {
        int v = std::countr_zero(mask);
        std::size_t rest = mask & ~(std::size_t(1) << v);
        bool have = false;
        V best(0);
        signed char pick = -1;
        for (const auto& [u, w] : adj[v]) {
            if (!(rest >> u & 1)) continue;
            V val = w + f[rest & ~(std::size_t(1) << u)];
            if (!have || val > best) {
                best = val;
                pick = static_cast<signed char>(u);
                have = true;
            }
        }
        if (!have || f[rest] > best) {
            best = f[rest];
            pick = -1;
        }
        f[mask] = best;
        choice[mask] = pick;
    }
    std::vector<std::pair<int, int>> out;
    std::size_t mask = states - 1;
    while (mask) {
        int v = std::countr_zero(mask);
        mask &= ~(std::size_t(1) << v);
        if (choice[mask | (std::size_t(1) << v)] >= 0) {
            int u = choice[mask | (std::size_t(1) << v)];
            out.emplace_back(v, u);
            mask &= ~(std::size_t(1) << u);
        }
    }
    return out;
}

Matching general_component(const DynamicGraph& g, const std::vector<Vertex>& comp) {
    int n = static_cast<int>(comp.size());
    std::map<Vertex, int> local;
    for (int i = 0; i < n; ++i) local[comp[i]] = i;
    std::vector<Rational> ws;
    std::vector<std::pair<int, int>> es;
    for (Vertex x : comp)
        for (Vertex y : g.neighbors(x))
            if (x < y) {
                es.emplace_back(local[x], local[y]);
                ws.push_back(g.weight(EdgeKey{x, y}));
            }
    std::vector<std::pair<int, int>> pairs;
    std::vector<long long> iw;
    if (scale_to_int(ws, comp.size(), iw)) {
        std::vector<std::vector<std::pair<int, long long>>> adj(n);
        for (std::size_t i = 0; i < es.size(); ++i) {
            adj[es[i].first].emplace_back(es[i].second, iw[i]);
            adj[es[i].second].emplace_back(es[i].first, iw[i]);
        }
        for (auto& a : adj) std::sort(a.begin(), a.end());
        pairs = subset_dp<long long>(n, adj);
    } else {
        std::vector<std::vector<std::pair<int, Rational>>> adj(n);
        for (std::size_t i = 0; i < es.size(); ++i) {
            adj[es[i].first].emplace_back(es[i].second, ws[i]);
            adj[es[i].second].emplace_back(es[i].first, ws[i]);
        }
        for (auto& a : adj)
            std::sort(a.begin(), a.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        pairs = subset_dp<Rational>(n, adj);
    }
    Matching m;
    for (auto [a, b] : pairs) {
        EdgeKey k = make_key(comp[a], comp[b]);
        m.add(k, g.weight(k));
    }
    return m;
}

}  // namespace

Matching mwm_exact_general(const DynamicGraph& g, const OracleBudget& budget) {
    Matching m;
    for (const auto& comp : g.components()) {
        if (comp.size() > budget.max_vertices_general) {
            std::ostringstream os;
            os << "component with " << comp.size() << " vertices exceeds general oracle budget "
               << budget.max_vertices_general;
            throw BudgetExceeded(os.str());
        }
        for (const auto& e : general_component(g, comp).edge_list()) m.add(e);
    }
    return m;
}

std::optional<std::vector<int>> bipartition(const DynamicGraph& g) {
    std::vector<int> side(g.vertex_count(), -1);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::deque<Vertex> q{s};
        while (!q.empty()) {
            Vertex x = q.front();
            q.pop_front();
            for (Vertex y : g.neighbors(x)) {
                if (side[y] == -1) {
                    side[y] = 1 - side[x];
                    q.push_back(y);
                } else if (side[y] == side[x]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

namespace {

// Minimum cost assignment on an n x n matrix (1-indexed), returns column for each row.
template <class V>
std::vector<int> hungarian(const std::vector<std::vector<V>>& a, int n, const V& inf) {
    std::vector<V> u(n + 1, V(0)), v(n + 1, V(0)), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            V delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                V cur = a[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n + 1, 0);
    for (int j = 1; j <= n; ++j) row_to_col[p[j]] = j;
    return row_to_col;
}

}  // namespace

Matching mwm_exact_bipartite(const DynamicGraph& g, const std::vector<int>& side, const OracleBudget& budget,
                             bool reverse_order) {
    std::vector<Vertex> left, right;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        if (g.degree(x) == 0) continue;
        int s = x < side.size() ? side[x] : 0;
        (s == 0 ? left : right).push_back(x);
    }
    for (const auto& [k, w] : g.edges()) {
        int su = k.u < side.size() ? side[k.u] : 0;
        int sv = k.v < side.size() ? side[k.v] : 0;
        if (su == sv) throw std::invalid_argument("graph is not bipartite under the given labels");
    }
    if (left.empty()) return Matching{};
    if (reverse_order) std::reverse(left.begin(), left.end());
    std::size_t n = std::max(left.size(), right.size());
    if (n > budget.max_vertices_bipartite) throw BudgetExceeded("bipartite oracle budget exceeded");
    std::map<Vertex, int> li, ri;
    for (std::size_t i = 0; i < left.size(); ++i) li[left[i]] = static_cast<int>(i) + 1;
    for (std::size_t j = 0; j < right.size(); ++j) ri[right[j]] = static_cast<int>(j) + 1;
    std::vector<Rational> ws;
    std::vector<EdgeKey> ks;
    for (const auto& [k, w] : g.edges()) {
        ks.push_back(k);
        ws.push_back(w);
    }
    int N = static_cast<int>(n);
    auto cell = [&](const EdgeKey& k) {
        int su = k.u < side.size() ? side[k.u] : 0;
        Vertex l = su == 0 ? k.u : k.v;
        Vertex r = su == 0 ? k.v : k.u;
        return std::pair<int, int>(li[l], ri[r]);
    };
    std::vector<int> assign;
    std::vector<long long> iw;
    if (scale_to_int(ws, 2 * n + 2, iw)) {
        long long total = 0;
        for (long long x : iw) total += x;
        std::vector<std::vector<long long>> a(N + 1, std::vector<long long>(N + 1, 0));
        for (std::size_t i = 0; i < ks.size(); ++i) {
            auto [r, c] = cell(ks[i]);
            a[r][c] = -iw[i];
        }
        assign = hungarian<long long>(a, N, 4 * (total + 1));
    } else {
        Rational total = 0;
        for (const auto& x : ws) total += x;
        std::vector<std::vector<Rational>> a(N + 1, std::vector<Rational>(N + 1, Rational(0)));
        for (std::size_t i = 0; i < ks.size(); ++i) {
            auto [r, c] = cell(ks[i]);
            a[r][c] = -ws[i];
        }
        assign = hungarian<Rational>(a, N, Rational(4) * (total + 1));
    }
    Matching m;
    for (std::size_t i = 0; i < left.size(); ++i) {
        int c = assign[i + 1];
        if (c < 1 || c > static_cast<int>(right.size())) continue;
        EdgeKey k = make_key(left[i], right[c - 1]);
        if (auto w = g.find_weight(k)) m.add(k, *w);
    }
    return m;
}

namespace {

struct Score {
    Rational w = 0;
    BigInt bonus = 0;
    bool operator>(const Score& o) const { return w != o.w ? w > o.w : bonus > o.bonus; }
};

Score plus(const Score& a, const Rational& w, const BigInt& bit) { return Score{a.w + w, a.bonus | bit}; }

// Exact DP on a path segment; returns chosen indices into `edges` (positions lo..hi).
std::vector<std::size_t> path_dp(const std::vector<Rational>& w, const std::vector<BigInt>& bits, std::size_t lo,
                                 std::size_t hi, Score& value) {
    std::vector<std::size_t> chosen;
    if (lo > hi || hi >= w.size()) {
        value = Score{};
        return chosen;
    }
    std::size_t len = hi - lo + 1;
    std::vector<Score> f0(len), f1(len);
    std::vector<char> from1(len, 0);
    f0[0] = Score{};
    f1[0] = plus(Score{}, w[lo], bits[lo]);
    for (std::size_t i = 1; i < len; ++i) {
        f1[i] = plus(f0[i - 1], w[lo + i], bits[lo + i]);
        if (f1[i - 1] > f0[i - 1]) {
            f0[i] = f1[i - 1];
            from1[i] = 1;
        } else {
            f0[i] = f0[i - 1];
        }
    }
    bool taken = f1[len - 1] > f0[len - 1];
    value = taken ? f1[len - 1] : f0[len - 1];
    for (std::size_t i = len; i-- > 0;) {
        if (taken) {
            chosen.push_back(lo + i);
            taken = false;
        } else {
            taken = from1[i] != 0;
        }
    }
    return chosen;
}

}  // namespace

namespace {

void check_simple_walk(const std::vector<WeightedEdge>& walk, bool cycle) {
    auto bad = [] { throw std::invalid_argument("edges do not form a simple path or cycle in order"); };
    std::size_t m = walk.size();
    Vertex start = walk[0].u, cur = walk[0].v;
    if (m >= 2 && (walk[1].u == start || walk[1].v == start)) std::swap(start, cur);
    std::vector<Vertex> seen = {start, cur};
    for (std::size_t i = 1; i < m; ++i) {
        const auto& e = walk[i];
        if (e.u != cur && e.v != cur) bad();
        cur = e.u == cur ? e.v : e.u;
        seen.push_back(cur);
    }
    if (cycle) {
        if (cur != start) bad();
        seen.pop_back();
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) bad();
}

}  // namespace

Matching mwm_path_cycle(const std::vector<WeightedEdge>& walk, bool cycle) {
    std::size_t m = walk.size();
    if (m == 0) return Matching{};
    if (cycle && m < 3) throw std::invalid_argument("a simple cycle needs at least three edges");
    check_simple_walk(walk, cycle);
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return walk[a].key() < walk[b].key(); });
    std::vector<BigInt> bits(m);
    for (std::size_t r = 0; r < m; ++r) bits[order[r]] = BigInt(1) << (m - 1 - r);
    std::vector<Rational> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = walk[i].w;
    std::vector<std::size_t> chosen;
    if (!cycle) {
        Score s;
        chosen = path_dp(w, bits, 0, m - 1, s);
    } else {
        Score out_score, in_score;
        auto without = path_dp(w, bits, 1, m - 1, out_score);
        auto with = m >= 4 ? path_dp(w, bits, 2, m - 2, in_score) : std::vector<std::size_t>{};
        if (m < 4) in_score = Score{};
        in_score = plus(in_score, w[0], bits[0]);
        with.push_back(0);
        chosen = in_score > out_score ? with : without;
    }
    Matching res;
    for (std::size_t i : chosen) res.add(walk[i]);
    return res;
}

std::vector<Walk> degree_two_walks(const DynamicGraph& g) {
    if (g.max_degree() > 2) throw std::invalid_argument("graph has a vertex of degree above two");
    std::vector<Walk> out;
    for (const auto& comp : g.components()) {
        Vertex start = comp.front();
        bool cycle = true;
        for (Vertex x : comp)
            if (g.degree(x) == 1) {
                start = x;
                cycle = false;
                break;
            }
        Walk walk;
        walk.cycle = cycle;
        Vertex prev = start, cur = start;
        Vertex next = *g.neighbors(start).begin();
        std::size_t steps = 0;
        while (true) {
            EdgeKey k = make_key(cur, next);
            walk.edges.emplace_back(k, g.weight(k));
            ++steps;
            prev = cur;
            cur = next;
            if (cur == start) break;
            const auto& nb = g.neighbors(cur);
            std::optional<Vertex> nx;
            for (Vertex y : nb)
                if (y != prev) nx = y;
            if (!nx || steps > comp.size()) break;
            next = *nx;
        }
        out.push_back(std::move(walk));
    }
    return out;
}

Matching mwm_degree_two(const DynamicGraph& g) {
    Matching m;
    for (const auto& walk : degree_two_walks(g))
        for (const auto& e : mwm_path_cycle(walk.edges, walk.cycle).edge_list()) m.add(e);
    return m;
}

Matching mwm_blossom(const DynamicGraph& g) {
    using EdgeProp = boost::property<boost::edge_weight_t, long long>;
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property, EdgeProp>;
    std::vector<Rational> ws;
    for (const auto& [k, w] : g.edges()) ws.push_back(w);
    std::vector<long long> iw;
    if (!scale_to_int(ws, 4 * g.vertex_count() + 4, iw))
        throw BudgetExceeded("weights do not fit the integer blossom solver");
    std::size_t n = g.vertex_count();
    BGraph bg(n);
    std::size_t i = 0;
    for (const auto& [k, w] : g.edges()) boost::add_edge(k.u, k.v, EdgeProp(iw[i++]), bg);
    std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(n);
    if (n > 0) boost::maximum_weighted_matching(bg, &mate[0]);
    Matching m;
    auto null_v = boost::graph_traits<BGraph>::null_vertex();
    for (std::size_t x = 0; x < n; ++x) {
        if (mate[x] == null_v || mate[x] <= x) continue;
        EdgeKey k = make_key(static_cast<Vertex>(x), static_cast<Vertex>(mate[x]));
        if (auto w = g.find_weight(k)) m.add(k, *w);
    }
    return m;
}

namespace {

Matching relabelled_general(const DynamicGraph& g, const OracleBudget& budget, bool flip) {
    if (!flip) return mwm_exact_general(g, budget);
    Vertex top = static_cast<Vertex>(g.vertex_count());
    DynamicGraph r(top);
    for (const auto& [k, w] : g.edges()) r.insert_edge(top - 1 - k.u, top - 1 - k.v, w);
    Matching rm = mwm_exact_general(r, budget);
    Matching m;
    for (const auto& [k, w] : rm.edges()) m.add(make_key(top - 1 - k.u, top - 1 - k.v), w);
    return m;
}

DynamicGraph component_graph(const DynamicGraph& g, const std::vector<Vertex>& comp) {
    DynamicGraph s(static_cast<std::size_t>(comp.back()) + 1);
    for (Vertex v : comp)
        for (Vertex y : g.neighbors(v))
            if (v < y) s.insert_edge(v, y, g.weight(make_key(v, y)));
    return s;
}

Matching best_component(const DynamicGraph& sub, std::size_t size, const OracleBudget& budget, bool flip) {
    if (size <= std::min<std::size_t>(budget.max_vertices_general, 14)) return relabelled_general(sub, budget, flip);
    if (auto side = bipartition(sub)) return mwm_exact_bipartite(sub, *side, budget, flip);
    if (sub.max_degree() <= 2) return mwm_degree_two(sub);
    if (size <= budget.max_vertices_general) return relabelled_general(sub, budget, flip);
    return mwm_blossom(sub);
}

// Small graphs go to the subset DP in one piece; otherwise each component gets its own method.
Matching best_exact(const DynamicGraph& g, const OracleBudget& budget, bool flip) {
    auto comps = g.components();
    std::size_t largest = 0;
    for (const auto& c : comps) largest = std::max(largest, c.size());
    if (largest <= std::min<std::size_t>(budget.max_vertices_general, 14)) return relabelled_general(g, budget, flip);
    Matching out;
    for (const auto& c : comps)
        for (const auto& e : best_component(component_graph(g, c), c.size(), budget, flip).edge_list()) out.add(e);
    return out;
}

}  // namespace

Matching mwm_best_exact(const DynamicGraph& g, const OracleBudget& budget) { return best_exact(g, budget, false); }

Rational mwm_value(const DynamicGraph& g, const OracleBudget& budget) { return mwm_best_exact(g, budget).weight(); }

std::size_t mcm_size(const DynamicGraph& g) {
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    std::size_t n = g.vertex_count();
    if (n == 0) return 0;
    BGraph bg(n);
    for (const auto& [k, w] : g.edges()) boost::add_edge(k.u, k.v, bg);
    std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(n);
    boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
    return boost::matching_size(bg, &mate[0]);
}

Matching mcm_bipartite(const DynamicGraph& g, const std::vector<int>& side) {
    std::size_t n = g.vertex_count();
    std::vector<Vertex> match(n, std::numeric_limits<Vertex>::max());
    const Vertex none = std::numeric_limits<Vertex>::max();
    auto left = [&](Vertex x) { return (x < side.size() ? side[x] : 0) == 0; };
    std::vector<int> seen(n, -1);
    std::function<bool(Vertex, int)> augment = [&](Vertex x, int stamp) -> bool {
        for (Vertex y : g.neighbors(x)) {
            if (seen[y] == stamp) continue;
            seen[y] = stamp;
            if (match[y] == none || augment(match[y], stamp)) {
                match[y] = x;
                match[x] = y;
                return true;
            }
        }
        return false;
    };
    int stamp = 0;
    for (Vertex x = 0; x < n; ++x) {
        if (!left(x) || match[x] != none) continue;
        augment(x, stamp++);
    }
    Matching m;
    for (Vertex x = 0; x < n; ++x)
        if (left(x) && match[x] != none) m.add(make_key(x, match[x]), Rational(1));
    return m;
}

Matching approx_mwm_static(const DynamicGraph& g, const Rational& eps) {
    if (!(eps > 0 && eps <= Rational(1, 6))) throw std::invalid_argument("eps must lie in (0, 1/6]");
    return mwm_best_exact(g);
}

std::vector<Matching> enumerate_approx_mwms(const DynamicGraph& g, const Rational& eps, const OracleBudget& budget) {
    std::size_t active = 0;
    for (Vertex x = 0; x < g.vertex_count(); ++x) active += g.degree(x) > 0;
    if (active > budget.max_vertices_general) throw BudgetExceeded("enumeration exceeds general oracle budget");
    Rational threshold = (1 - eps) * mwm_value(g, budget);
    auto edges = g.edge_list();
    std::vector<Rational> suffix(edges.size() + 1, Rational(0));
    for (std::size_t i = edges.size(); i-- > 0;) suffix[i] = suffix[i + 1] + edges[i].w;
    std::vector<Matching> out;
    Matching cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (cur.weight() + suffix[i] < threshold) return;
        if (i == edges.size()) {
            for (const auto& e : edges)
                if (cur.can_add(e.key())) return;
            out.push_back(cur);
            return;
        }
        const auto& e = edges[i];
        if (cur.can_add(e.key())) {
            cur.add(e);
            rec(i + 1);
            cur.remove(e.key());
        }
        rec(i + 1);
    };
    rec(0);
    return out;
}

OracleSolver::OracleSolver(OracleKind kind, bool churn, OracleBudget budget)
    : kind_(kind), churn_(churn), budget_(budget) {}

Matching OracleSolver::solve(bool flip) const {
    switch (kind_) {
        case OracleKind::general:
            return relabelled_general(graph_, budget_, flip);
        case OracleKind::bipartite: {
            auto side = bipartition(graph_);
            if (!side) throw std::invalid_argument("bipartite oracle solver observed an odd cycle");
            return mwm_exact_bipartite(graph_, *side, budget_, flip);
        }
        case OracleKind::blossom:
            return mwm_blossom(graph_);
        case OracleKind::best:
            break;
    }
    return best_exact(graph_, budget_, flip);
}

MatchingDelta OracleSolver::update(const UpdateEvent& ev) {
    apply_update(graph_, ev);
    ++updates_;
    return replace_matching(solve(churn_ && (updates_ % 2 == 1)));
}

}  // namespace dynmwm
