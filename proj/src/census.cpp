#include "dynmwm/census.hpp"

#include <bit>
#include <stdexcept>

namespace dynmwm {

NeighborIndex::Slot& NeighborIndex::slot(Vertex v) {
    if (v >= slots_.size()) slots_.resize(static_cast<std::size_t>(v) + 1);
    return slots_[v];
}

void NeighborIndex::add(Vertex v, std::size_t cls, const EdgeKey& e) {
    Slot& s = slot(v);
    if (!s.by_class.emplace(cls, e).second)
        throw std::invalid_argument("vertex " + std::to_string(v) + " already has an edge in class " +
                                    std::to_string(cls));
    if (packed_) s.bits |= std::uint64_t(1) << (k_ - cls);
}

void NeighborIndex::remove(Vertex v, std::size_t cls) {
    Slot& s = slot(v);
    s.by_class.erase(cls);
    if (packed_) s.bits &= ~(std::uint64_t(1) << (k_ - cls));
}

bool NeighborIndex::empty(Vertex v) const { return v >= slots_.size() || slots_[v].by_class.empty(); }

std::optional<std::pair<std::size_t, EdgeKey>> NeighborIndex::top(Vertex v) const {
    if (empty(v)) return std::nullopt;
    const Slot& s = slots_[v];
    if (packed_) {
        std::size_t cls = k_ - static_cast<std::size_t>(std::countr_zero(s.bits));
        return std::make_pair(cls, s.by_class.at(cls));
    }
    auto it = s.by_class.rbegin();
    return std::make_pair(it->first, it->second);
}

std::optional<EdgeKey> NeighborIndex::at(Vertex v, std::size_t cls) const {
    if (v >= slots_.size()) return std::nullopt;
    auto it = slots_[v].by_class.find(cls);
    if (it == slots_[v].by_class.end()) return std::nullopt;
    return it->second;
}

bool NeighborIndex::consistent() const {
    if (!packed_) return true;
    for (const auto& s : slots_) {
        std::uint64_t expect = 0;
        for (const auto& [cls, e] : s.by_class) expect |= std::uint64_t(1) << (k_ - cls);
        if (expect != s.bits) return false;
    }
    return true;
}

Census::Census(std::size_t k, std::vector<WeightInterval> intervals)
    : k_(k), intervals_(std::move(intervals)), index_(k, k <= 64), members_(k) {
    if (!intervals_.empty()) {
        if (intervals_.size() != k) throw std::invalid_argument("census needs one interval per class");
        for (std::size_t i = 0; i + 1 < k; ++i)
            if (!(intervals_[i].hi <= intervals_[i + 1].lo))
                throw std::invalid_argument("census classes must be disjoint and ascending");
    }
}

void Census::check_member(std::size_t j, const WeightedEdge& e) const {
    if (j < 1 || j > k_) throw std::out_of_range("census class " + std::to_string(j) + " out of range");
    if (!intervals_.empty() && !intervals_[j - 1].contains(e.w))
        throw std::invalid_argument("edge " + to_string(e.key()) + " lies outside class " + std::to_string(j));
}

bool Census::is_top(Vertex v, std::size_t cls) const {
    ++probes_;
    auto t = index_.top(v);
    return t && t->first == cls;
}

std::optional<std::size_t> Census::class_of_member(const EdgeKey& k) const {
    auto it = member_class_.find(k);
    if (it == member_class_.end()) return std::nullopt;
    return it->second;
}

Rational Census::member_total() const {
    Rational s = 0;
    for (const auto& m : members_) s += m.weight();
    return s;
}

MatchingDelta Census::init(const std::vector<Matching>& ms) {
    if (ms.size() != k_) throw std::invalid_argument("census init needs k matchings");
    if (!member_class_.empty()) throw std::logic_error("census already initialised");
    Matching before = out_;
    for (std::size_t j = k_; j >= 1; --j) {
        for (const auto& e : ms[j - 1].edge_list()) {
            check_member(j, e);
            if (member_class_.count(e.key())) throw std::invalid_argument("edge appears in two classes");
            ++probes_;
            if (index_.empty(e.u) && index_.empty(e.v)) out_.add(e);
            index_.add(e.u, j, e.key());
            index_.add(e.v, j, e.key());
            members_[j - 1].add(e);
            member_class_[e.key()] = j;
        }
    }
    return diff(before, out_);
}

MatchingDelta Census::insert(std::size_t j, const WeightedEdge& e) {
    check_member(j, e);
    if (member_class_.count(e.key())) throw std::invalid_argument("edge " + to_string(e.key()) + " already a member");
    members_[j - 1].add(e);  // throws if M_j stops being a matching
    member_class_[e.key()] = j;
    index_.add(e.u, j, e.key());
    index_.add(e.v, j, e.key());
    MatchingDelta d;
    for (Vertex x : {e.u, e.v}) {
        ++probes_;
        auto mk = out_.edge_at(x);
        if (!mk) continue;
        if (member_class_.at(*mk) < j) {
            d.removed.emplace_back(*mk, out_.weight_of(*mk));
            out_.remove(*mk);
        }
    }
    if (is_top(e.u, j) && is_top(e.v, j)) {
        out_.add(e);
        d.added.push_back(e);
    }
    return d;
}

MatchingDelta Census::erase(std::size_t j, const EdgeKey& k) {
    auto it = member_class_.find(k);
    if (it == member_class_.end() || it->second != j)
        throw std::invalid_argument("edge " + to_string(k) + " is not in class " + std::to_string(j));
    member_class_.erase(it);
    index_.remove(k.u, j);
    index_.remove(k.v, j);
    members_[j - 1].remove(k);
    MatchingDelta d;
    if (out_.contains(k)) {
        d.removed.emplace_back(k, out_.weight_of(k));
        out_.remove(k);
    }
    for (Vertex x : {k.u, k.v}) {
        ++probes_;
        auto t = index_.top(x);
        if (!t) continue;
        const EdgeKey& cand = t->second;
        if (out_.contains(cand)) continue;
        if (is_top(cand.other(x), t->first)) {
            WeightedEdge e(cand, members_[t->first - 1].weight_of(cand));
            out_.add(e);
            d.added.push_back(e);
        }
    }
    return d;
}

bool Census::characterization_holds() const {
    if (!index_.consistent()) return false;
    for (const auto& [k, j] : member_class_) {
        auto tu = index_.top(k.u);
        auto tv = index_.top(k.v);
        bool top_both = tu && tv && tu->second == k && tv->second == k;
        if (top_both != out_.contains(k)) return false;
    }
    for (const auto& [k, w] : out_.edges())
        if (!member_class_.count(k)) return false;
    return true;
}

bool Census::locally_greedy() const {
    for (const auto& [k, j] : member_class_) {
        if (out_.contains(k)) continue;
        auto tu = index_.top(k.u);
        auto tv = index_.top(k.v);
        bool dominated = (tu && tu->first > j) || (tv && tv->first > j);
        if (!dominated) return false;
    }
    return true;
}

}  // namespace dynmwm
