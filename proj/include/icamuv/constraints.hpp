#pragma once

#include "icamuv/enumeration.hpp"
#include "icamuv/metrics.hpp"

#include <cstdint>
#include <vector>

namespace icamuv {

/// Conjunctive constraints on solution DAGs.
struct ConstraintSet {
    std::vector<NodeId> sinks;                   // out-degree 0
    std::vector<Edge> required_edges;
    std::vector<Edge> forbidden_edges;
    std::vector<NodePair> required_absent_pairs; // no edge either way

    /// Sorted, de-duplicated copy.
    ConstraintSet normalized() const;
    /// Union of both sets (normalized).
    ConstraintSet merged(const ConstraintSet& other) const;
    bool empty() const;

    /// Throws ContradictoryConstraints when no DAG can satisfy the set, and
    /// InvalidInput for ids outside [0, order).
    void check(std::size_t order) const;

    bool satisfied_by(const Dag& dag) const;

    bool operator==(const ConstraintSet&) const = default;
};

/// Solutions satisfying every constraint, in the original order.
EnumerationResult filter_solutions(const EnumerationResult& result, const ConstraintSet& constraints);

/// Uniform sample without replacement, returned in result order. All
/// solutions when n is at least their count.
std::vector<Dag> sample_solutions(const EnumerationResult& result, std::size_t n, std::uint64_t seed);

/// Indices chosen by sample_solutions.
std::vector<std::size_t> sample_indices(std::size_t count, std::size_t n, std::uint64_t seed);

FrequencyMatrix edge_frequency(const EnumerationResult& result);

} // namespace icamuv
