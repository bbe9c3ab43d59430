#pragma once

#include "dynmwm/graph.hpp"
#include "dynmwm/weights.hpp"

#include <array>
#include <set>

namespace dynmwm {

// Three-edge path a, b, c with w(a) = w(b) = beta^level and w(c) = beta^(level+1).
struct Gadget {
    long level = 0;
    std::array<Vertex, 4> path{};
    WeightedEdge a, b, c;
};

struct GadgetInstance {
    Rational beta;
    long N = 0;
    long min_level = 0;
    long max_level = 0;
    std::vector<long> counts;  // counts[level - min_level]
    std::vector<Gadget> gadgets;
    DynamicGraph graph;
    std::set<EdgeKey> sparsifier;  // alpha instance only

    long count(long level) const { return counts.at(static_cast<std::size_t>(level - min_level)); }
    // mu_w of the instance, gadget by gadget.
    Rational mu() const;
};

Gadget make_gadget(long level, const Rational& beta, Vertex first);
// beta^level (1 + beta).
Rational gadget_mwm(long level, const Rational& beta);
// Nearest integer, halves rounded up.
long round_nearest(const Rational& x);

// Levels 0..N with round(1.5^(N-i)) level-i gadgets.
GadgetInstance gen_partition_counterexample(long N);

// beta with beta / (beta + 1) = alpha.
Rational alpha_beta(const Rational& alpha);
// floor((alpha - alpha^2 - (1-alpha)^2) / delta - 1).
long alpha_level_count(const Rational& alpha, const Rational& delta);
// Levels 0..N-1 with multiplier * round(beta^(N-i)) gadgets. The sparsifier keeps every
// b_i, c_i for i <= N-2, every b_(N-1) and round(alpha * count) of the c_(N-1) edges.
GadgetInstance gen_alpha_counterexample(const Rational& alpha, long N, long multiplier = 3);

// True when the graph is exactly the vertex-disjoint union of the listed gadgets.
bool is_disjoint_three_paths(const GadgetInstance& inst);

// Smallest mu_w(M_1 u ... u M_k) over all choices of exact MWMs M_i of the gadget
// restricted to each class (found by enumeration).
Rational adversarial_union_value(const Gadget& g, const std::vector<WeightInterval>& classes);

struct PartitionVerdict {
    Rational loss;
    Rational mu;
    Rational threshold;          // delta * mu
    bool exceeds = false;        // loss > threshold
    Rational max_width;
    Rational cap_exponent;       // N / (2.5 delta N + 1)
    bool width_ok = false;       // exceeds, or some class has width >= 1.5^cap_exponent
    std::vector<long> broken_levels;
    // Per class boundary: the largest j with 1.5^j < r_i.
    std::vector<long> predicted_levels;
};

// Throws std::invalid_argument when the classes are not contiguous or miss an edge weight.
PartitionVerdict certify_partition_loss(const GadgetInstance& inst, const std::vector<WeightInterval>& partition,
                                        const Rational& delta);

struct ExhaustiveVerdict {
    Rational delta;
    Rational cap_exponent;
    std::uint64_t shapes = 0;       // gap subsets visited
    std::uint64_t feasible = 0;     // realisable with every class narrower than the cap
    std::uint64_t violations = 0;   // feasible ones with loss <= delta * mu
    Rational min_loss;
    Rational threshold;
    bool holds() const { return violations == 0 && feasible > 0; }
};

// Every covering partition of the instance's weights is determined, up to loss, by the set
// of gaps 1.5^j | 1.5^(j+1) it separates. Enumerates all such sets that some partition with
// all widths < 1.5^cap realises and checks each loses more than delta * mu.
ExhaustiveVerdict certify_all_narrow_partitions(const GadgetInstance& inst, const Rational& delta);

struct AlphaVerdict {
    Rational alpha;
    Rational delta;
    Rational mu_g;
    Rational mu_s;
    Rational ratio;           // mu_s / mu_g
    Rational formula_ratio;   // alpha - (alpha - alpha^2 - (1-alpha)^2) / N
    std::size_t classes_checked = 0;
    std::size_t class_failures = 0;
    bool ratio_matches = false;
    bool ratio_below = false;  // formula_ratio < alpha - delta
    bool holds() const { return class_failures == 0 && ratio_matches && ratio_below; }
};

// Checks each dyadic class [2^a, 2^b) not containing every weight for an alpha-approximate
// matching inside the sparsifier, and the sparsifier's overall ratio.
AlphaVerdict certify_alpha_counterexample(const GadgetInstance& inst, const Rational& alpha, const Rational& delta);

// Insert-only trace of the instance's edges in gadget order.
std::vector<UpdateEvent> as_insert_trace(const GadgetInstance& inst);

}  // namespace dynmwm
