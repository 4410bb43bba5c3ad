#pragma once

// Brute-force reference implementations. Nothing here calls into the path
// analysis, integration or enumeration code; only graph primitives and the
// plain input types are shared.

#include "icamuv/enumeration.hpp"
#include "icamuv/graph.hpp"
#include "icamuv/integration.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace icamuv::oracle {

inline constexpr std::size_t kDefaultOpenPairCap = 12;
inline constexpr std::size_t kPathCheckNodeCap = 10;

struct OracleResult {
    std::uint64_t assignments_examined = 0;     // 3^|E|
    std::uint64_t dag_count = 0;
    std::map<std::size_t, std::uint64_t> cost_histogram;
    std::optional<std::size_t> c_star;
    std::size_t budget = 0;
    std::vector<NodePair> open_pairs;           // canonical order
    std::vector<Solution> solutions;            // cost <= C* + budget, sorted
};

/// Enumerates every pattern over the open pairs, keeps the acyclic ones and
/// scores each by literal path enumeration. Throws CapExceeded when the open
/// pair count exceeds `cap`.
OracleResult brute_force_enumerate(const IntegrationInput& input, std::size_t budget,
                                   std::size_t cap = kDefaultOpenPairCap,
                                   Execution execution = Execution::Serial);

/// Enumerates simple paths and tests the UCP / UBP forms directly.
/// Throws CapExceeded above kPathCheckNodeCap nodes.
bool exhaustive_up_check(const DirectedGraph& g, NodeSet observed, NodeId i, NodeId j);

/// Inconsistency cost recounted from scratch with exhaustive_up_check.
std::size_t definitional_cost(const DirectedGraph& candidate, const IntegrationInput& input);

/// Overlapped edges and canonical open pairs recomputed from set definitions.
/// Throws CyclicGraph when the overlapped graph is cyclic.
std::pair<DirectedGraph, std::vector<NodePair>> reference_overlap(const IntegrationInput& input);

} // namespace icamuv::oracle
