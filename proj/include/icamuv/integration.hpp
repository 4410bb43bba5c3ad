#pragma once

#include "icamuv/graph.hpp"

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace icamuv {

/// CAM-UV results G_1..G_m over a shared variable table.
struct IntegrationInput {
    VariableTable table;
    std::vector<MixedGraph> results;

    /// Throws InvalidInput unless: m >= 2; every observed set is non-empty and
    /// distinct from the others; every dataset shares a variable with some
    /// other dataset; the observed sets together cover the table.
    void validate() const;

    std::size_t order() const { return table.size(); }
};

/// Overlapped graph plus the pairs the search still has to decide.
struct OverlapResult {
    Dag overlapped;                                  // union of identified edges
    std::vector<NodePair> e_imp;                     // sorted
    std::vector<NodePair> e_uno;                     // sorted
    std::vector<NodePair> open_pairs;                // search order
    std::vector<NodeSet> observed;                   // V_k
    std::vector<std::vector<NodePair>> identified;   // I_k, sorted
    std::vector<std::vector<NodePair>> unidentified; // N_k, sorted
    std::vector<Edge> dropped_edges;                 // edges skipped by repair mode

    std::size_t order() const { return overlapped.order(); }
    std::size_t dataset_count() const { return observed.size(); }
    /// Position of `p` in open_pairs, or open_pairs.size() when absent.
    std::size_t open_index(NodePair p) const;
};

enum class PairState : std::uint8_t { Absent = 0, Forward = 1, Backward = 2 };

/// Decisions for a prefix of the open pairs; `size()` is the processed count t.
/// Forward orients lo -> hi. Stored as two bitmasks, so at most 64 pairs.
class Assignment {
public:
    static constexpr std::size_t kMaxPairs = 64;

    Assignment() = default;
    explicit Assignment(const std::vector<PairState>& codes);

    /// Total assignment over `base.open_pairs` with every pair not listed set
    /// Absent. Throws UnknownPair for a pair outside the open set.
    static Assignment from_pairs(const OverlapResult& base,
                                 std::initializer_list<std::pair<NodePair, PairState>> decisions);

    std::size_t size() const { return size_; }
    PairState operator[](std::size_t s) const {
        if ((forward_ >> s) & 1U) return PairState::Forward;
        if ((backward_ >> s) & 1U) return PairState::Backward;
        return PairState::Absent;
    }
    std::vector<PairState> codes() const;

    /// Copy extended with Absent up to position s, then `state` at s.
    Assignment extended(std::size_t s, PairState state) const;
    /// Copy padded with Absent to length n.
    Assignment finalized(std::size_t n) const;

    bool operator==(const Assignment&) const = default;

private:
    std::uint64_t forward_ = 0;
    std::uint64_t backward_ = 0;
    std::uint32_t size_ = 0;
};

/// Builds the overlapped graph and the open pair set. Open pairs come out in
/// canonical order; see edge_order for search orderings. With `repair`, edges
/// that would close a cycle are skipped (datasets in order, edges in
/// canonical order) and reported in dropped_edges; otherwise a cyclic union
/// throws CyclicOverlap.
OverlapResult overlap(const IntegrationInput& input, bool repair = false);

/// Overlapped graph plus the oriented edges of `a`. No acyclicity check.
DirectedGraph apply_assignment(const OverlapResult& base, const Assignment& a);

/// Precomputed per-dataset pair lists for fast cost evaluation.
class CostModel {
public:
    explicit CostModel(const OverlapResult& base);

    const OverlapResult& base() const { return *base_; }

    /// |I_k pairs with a UCP/UBP| summed over datasets.
    std::size_t identified_violations(const DirectedGraph& g) const;
    /// |N_k pairs without any UCP/UBP| summed over datasets.
    std::size_t unidentified_violations(const DirectedGraph& g) const;

    /// Inconsistency cost of a finished candidate.
    std::size_t cost(const DirectedGraph& candidate) const {
        return identified_violations(candidate) + unidentified_violations(candidate);
    }

    /// Lower bound over every completion of `prefix`: identified violations on
    /// the partial graph plus unidentified violations on its bi-directed
    /// completion over the still-open pairs.
    std::size_t lower_bound(const Assignment& prefix) const;

    /// The partial graph with both orientations of every pair at index >= t.
    DirectedGraph completion(const DirectedGraph& partial, std::size_t t) const;

private:
    struct Dataset {
        NodeSet hidden;
        std::vector<NodePair> identified;
        std::vector<NodePair> unidentified;
    };
    const OverlapResult* base_;
    std::vector<Dataset> datasets_;
};

bool is_consistent(const Dag& candidate, const OverlapResult& base);
std::size_t inconsistency_cost(const Dag& candidate, const OverlapResult& base);
/// `partial` must hold exactly t decisions.
std::size_t lower_bound_cost(std::size_t t, const Assignment& partial, const OverlapResult& base);

} // namespace icamuv
