#pragma once

#include "dynmwm/matching.hpp"
#include "dynmwm/oracle.hpp"
#include "dynmwm/weights.hpp"

#include <vector>

namespace dynmwm {

struct SubstitutionTarget {
    WeightInterval interval;  // unpadded [l_i, r_i)
    Matching target;          // T_i, inside the padded class [eps l_i, r_i / eps)
};

struct SubstitutionPlan {
    Matching source;
    std::vector<SubstitutionTarget> targets;  // ascending by interval
    Rational eps;
};

struct CompositionCertificate {
    Matching result;
    Rational deleted_weight = 0;       // sum of w(D_i)
    Rational substitution_loss = 0;    // sum over flipped components of w(P & M~) - w(P & T)
    Rational padded_deficit = 0;       // sum_i mu_w(padded_i) - w(T_i)
    Rational source_weight = 0;
    Rational bound = 0;                // lower bound the result must meet
    std::size_t phases = 1;
    // Flipped components that left their padded class; always 0 when the spread precondition holds.
    std::size_t confinement_violations = 0;

    bool holds() const { return result.weight() >= bound; }
};

// Constructive substitution: returns M within S and the T_i with M & G_[l_i,r_i) inside T_i.
// Throws std::invalid_argument when the intervals are not (1/eps)-spread or a T_i leaves its padded class.
CompositionCertificate substitute(const DynamicGraph& g, const SubstitutionPlan& plan,
                                  const OracleBudget& budget = OracleBudget::from_env());

// g = ceil(log_delta(1/eps^3)) + 1.
long composition_phases(const Rational& eps, const Rational& delta);

// Chained substitution seeded with an exact MWM of g. `class_matchings[i]` is the
// matching on the i-th padded class of `partition`. The certificate bound is (1 - 7 g eps) mu_w(G).
// Throws std::invalid_argument if some class matching is not (1-eps)-approximate on its padded class.
CompositionCertificate compose(const DynamicGraph& g, const std::vector<Matching>& class_matchings,
                               const WeightPartition& partition, const Rational& eps,
                               const OracleBudget& budget = OracleBudget::from_env());

// Oracle-free aggregation: an approximate MWM on the union of the class matchings.
Matching compose_production(const std::vector<Matching>& class_matchings, const Rational& eps);

// Union of matchings as a graph.
DynamicGraph union_graph(const std::vector<Matching>& ms);

// Heaviest-first greedy over the union. Intervals must be (1/eps)-spread.
Matching greedy_combine(const std::vector<Matching>& ms, const std::vector<WeightInterval>& intervals,
                        const Rational& eps);

struct CombinationCertificate {
    Rational class_sum = 0;  // sum_i mu_w(G_[l_i, r_i))
    Rational mu = 0;         // mu_w(G)
    Rational bound = 0;      // (1 + 4 eps) mu
    bool holds() const { return class_sum <= bound; }
};

CombinationCertificate certify_weight_combination(const DynamicGraph& g, const std::vector<WeightInterval>& intervals,
                                                  const Rational& eps,
                                                  const OracleBudget& budget = OracleBudget::from_env());

}  // namespace dynmwm
