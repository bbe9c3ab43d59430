#pragma once

#include "dynmwm/graph.hpp"

#include <optional>
#include <vector>

namespace dynmwm {

// Half-open [lo, hi).
struct WeightInterval {
    Rational lo;
    Rational hi;

    WeightInterval() = default;
    WeightInterval(Rational l, Rational h);
    bool contains(const Rational& w) const { return lo <= w && w < hi; }
    WeightInterval padded(const Rational& eps) const { return {lo * eps, hi / eps}; }
    Rational width() const { return hi / lo; }
    bool operator==(const WeightInterval&) const = default;
};

struct WeightPartition {
    std::vector<WeightInterval> intervals;
    // Empty unless built with padding; otherwise padded[i] = intervals[i].padded(eps).
    std::vector<WeightInterval> padded;
    Rational delta = 2;
    Rational eps = Rational(1, 6);
    bool contiguous = true;

    std::size_t size() const { return intervals.size(); }
    // Index of the unpadded interval holding w. The top end of the last interval
    // is treated as closed so that w_max itself is covered.
    std::optional<std::size_t> class_of(const Rational& w) const;
    std::vector<std::size_t> padded_classes_of(const Rational& w) const;
    bool is_wide(const Rational& d) const;
    bool is_spread(const Rational& d) const;
};

// Covering delta-wide partition of [w_min, w_max] anchored at w_min.
WeightPartition build_partition(const Rational& w_min, const Rational& w_max, const Rational& delta,
                                const Rational& eps, bool pad);

// Like build_partition, but with enough intervals that w_max lies strictly inside
// the last half-open interval (floor(log_delta(w_max/w_min)) + 1 of them).
WeightPartition build_strict_partition(const Rational& w_min, const Rational& w_max, const Rational& delta,
                                       const Rational& eps, bool pad);

// Sub-partition made of the intervals at the given indices (in order).
WeightPartition select_classes(const WeightPartition& p, const std::vector<std::size_t>& idx);

// G_I: edges with weight in [lo, hi).
DynamicGraph restrict(const DynamicGraph& g, const WeightInterval& I);

// Upper bound on how many padded intervals may hold one weight.
long padded_multiplicity_bound(const Rational& delta, const Rational& eps);

}  // namespace dynmwm
