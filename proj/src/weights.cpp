#include "dynmwm/weights.hpp"

#include <stdexcept>

namespace dynmwm {

WeightInterval::WeightInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (!(lo > 0 && lo < hi)) throw std::invalid_argument("interval needs 0 < lo < hi");
}

std::optional<std::size_t> WeightPartition::class_of(const Rational& w) const {
    for (std::size_t i = 0; i < intervals.size(); ++i)
        if (intervals[i].contains(w)) return i;
    if (contiguous && !intervals.empty() && w == intervals.back().hi) return intervals.size() - 1;
    return std::nullopt;
}

std::vector<std::size_t> WeightPartition::padded_classes_of(const Rational& w) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < padded.size(); ++i)
        if (padded[i].contains(w)) out.push_back(i);
    return out;
}

bool WeightPartition::is_wide(const Rational& d) const {
    for (const auto& I : intervals)
        if (I.hi < d * I.lo) return false;
    return true;
}

bool WeightPartition::is_spread(const Rational& d) const {
    for (std::size_t i = 0; i + 1 < intervals.size(); ++i)
        if (intervals[i + 1].lo < d * intervals[i].hi) return false;
    return true;
}

namespace {

void check_partition_args(const Rational& w_min, const Rational& w_max, const Rational& delta, const Rational& eps) {
    if (!(eps > 0 && eps <= Rational(1, 6))) throw std::invalid_argument("eps must lie in (0, 1/6]");
    if (delta <= 1) throw std::invalid_argument("delta must exceed 1");
    if (!(w_min > 0 && w_min <= w_max)) throw std::invalid_argument("need 0 < w_min <= w_max");
}

WeightPartition geometric_partition(const Rational& w_min, long count, const Rational& delta, const Rational& eps,
                                    bool pad) {
    WeightPartition p;
    p.delta = delta;
    p.eps = eps;
    p.contiguous = true;
    Rational lo = w_min;
    for (long i = 0; i < count; ++i) {
        Rational hi = lo * delta;
        p.intervals.emplace_back(lo, hi);
        if (pad) p.padded.push_back(p.intervals.back().padded(eps));
        lo = hi;
    }
    return p;
}

}  // namespace

WeightPartition build_partition(const Rational& w_min, const Rational& w_max, const Rational& delta,
                                const Rational& eps, bool pad) {
    check_partition_args(w_min, w_max, delta, eps);
    return geometric_partition(w_min, std::max(1L, ceil_log(w_max / w_min, delta)), delta, eps, pad);
}

WeightPartition build_strict_partition(const Rational& w_min, const Rational& w_max, const Rational& delta,
                                       const Rational& eps, bool pad) {
    check_partition_args(w_min, w_max, delta, eps);
    return geometric_partition(w_min, floor_log(w_max / w_min, delta) + 1, delta, eps, pad);
}

WeightPartition select_classes(const WeightPartition& p, const std::vector<std::size_t>& idx) {
    WeightPartition out;
    out.delta = p.delta;
    out.eps = p.eps;
    out.contiguous = false;
    for (std::size_t i : idx) {
        out.intervals.push_back(p.intervals.at(i));
        if (!p.padded.empty()) out.padded.push_back(p.padded.at(i));
    }
    return out;
}

DynamicGraph restrict(const DynamicGraph& g, const WeightInterval& I) {
    return filter_edges(g, [&](const WeightedEdge& e) { return I.contains(e.w); });
}

long padded_multiplicity_bound(const Rational& delta, const Rational& eps) {
    return ceil_log(Rational(1) / (eps * eps), delta) + 1;
}

}  // namespace dynmwm
