#pragma once

#include "icamuv/instance_lab.hpp"
#include "icamuv/integration.hpp"

#include <cstdint>
#include <random>

namespace icamuv::testing {

/// Two datasets over v1..v4 (ids 0..3):
///   V1 = {v1, v2, v4}, A1 = {v1 -> v2}, N1 = {{v1, v4}}
///   V2 = {v2, v3, v4}, A2 = {v3 -> v4}, N2 = {{v2, v3}}
IntegrationInput example_one();

/// Six nodes: 0 -> 1, 0 -> 2, 3 -> 4, 4 -> 5 (a UBP over 1, 2 and a UCP
/// from 3 to 5 once 0 and 4 are hidden).
Dag two_path_truth();

/// Directed graph with independent edge probability `p` per ordered pair;
/// may be cyclic.
DirectedGraph random_digraph(std::size_t n, double p, std::mt19937_64& rng);

/// Non-empty random subset of 0..n-1 with at least two members.
NodeSet random_view(std::size_t n, std::mt19937_64& rng);

/// A valid small instance: truth on `d` nodes with m views of size d - u.
/// Loops over seeds until sampling succeeds; returns the seed used.
GroundTruthInstance small_instance(std::size_t d, double p, std::size_t m, std::size_t u,
                                   std::uint64_t& seed);

} // namespace icamuv::testing
