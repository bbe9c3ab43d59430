#pragma once

#include "dynmwm/matching.hpp"
#include "dynmwm/weights.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace dynmwm {

// Per-vertex record of incident member edges, at most one per class.
class NeighborIndex {
  public:
    // packed: keep a bit word with bit (k - j) set iff class j is occupied.
    NeighborIndex(std::size_t k, bool packed) : k_(k), packed_(packed) {}

    void add(Vertex v, std::size_t cls, const EdgeKey& e);
    void remove(Vertex v, std::size_t cls);
    bool empty(Vertex v) const;
    // Class and edge of the highest occupied class at v.
    std::optional<std::pair<std::size_t, EdgeKey>> top(Vertex v) const;
    std::optional<EdgeKey> at(Vertex v, std::size_t cls) const;
    bool packed() const { return packed_; }
    std::uint64_t bits(Vertex v) const { return v < slots_.size() ? slots_[v].bits : 0; }
    // Class-to-edge maps agree with the bit words.
    bool consistent() const;

  private:
    struct Slot {
        std::uint64_t bits = 0;
        std::map<std::size_t, EdgeKey> by_class;
    };
    Slot& slot(Vertex v);

    std::size_t k_;
    bool packed_;
    std::vector<Slot> slots_;
};

// Dynamic locally greedy census matching over member matchings M_1..M_k (classes ascending).
class Census {
  public:
    // intervals may be empty; when given they must be k strictly increasing
    // classes and every member edge is checked against its class.
    explicit Census(std::size_t k, std::vector<WeightInterval> intervals = {});

    std::size_t classes() const { return k_; }
    bool packed() const { return index_.packed(); }

    // ms[j-1] is M_j. Returns the change from the empty output.
    MatchingDelta init(const std::vector<Matching>& ms);
    MatchingDelta insert(std::size_t j, const WeightedEdge& e);
    MatchingDelta erase(std::size_t j, const EdgeKey& k);

    const Matching& matching() const { return out_; }
    const Matching& member(std::size_t j) const { return members_.at(j - 1); }
    std::optional<std::size_t> class_of_member(const EdgeKey& k) const;
    Rational member_total() const;

    // Output edges are exactly the member edges that are highest in both endpoint indexes.
    bool characterization_holds() const;
    // Every excluded member edge touches a member edge of a strictly higher class.
    bool locally_greedy() const;
    std::uint64_t probes() const { return probes_; }

  private:
    bool is_top(Vertex v, std::size_t cls) const;
    void check_member(std::size_t j, const WeightedEdge& e) const;

    std::size_t k_;
    std::vector<WeightInterval> intervals_;
    NeighborIndex index_;
    std::vector<Matching> members_;
    std::map<EdgeKey, std::size_t> member_class_;
    Matching out_;
    mutable std::uint64_t probes_ = 0;
};

}  // namespace dynmwm
