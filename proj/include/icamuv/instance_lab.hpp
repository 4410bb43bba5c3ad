#pragma once

#include "icamuv/graph.hpp"
#include "icamuv/integration.hpp"

#include <cstdint>
#include <vector>

namespace icamuv {

struct InstanceParams {
    std::size_t d = 10;   // variables
    double p = 0.3;       // edge probability
    std::size_t m = 2;    // datasets
    std::size_t u = 3;    // unobserved variables per dataset

    bool operator==(const InstanceParams&) const = default;
};

/// A ground-truth DAG and the variable sets observed by each dataset.
struct GroundTruthInstance {
    Dag truth;
    std::vector<NodeSet> views;
    std::uint64_t seed = 0;
    InstanceParams params;

    /// Throws InvalidInput unless the views are m distinct sets of size d - u
    /// that cover every variable, each share a variable with another view, and
    /// at least u truth edges are co-observed and at least u are never
    /// co-observed.
    void validate() const;

    bool operator==(const GroundTruthInstance&) const = default;
};

/// Erdős–Rényi skeleton oriented along a uniformly random permutation.
Dag gen_er_dag(std::size_t d, double p, std::uint64_t seed);

/// Rejection-samples views until every instance invariant holds.
/// Throws ConstraintsUnsatisfiable after `max_attempts` draws, or immediately
/// when the truth cannot meet the edge constraints (fewer than 2u edges, u = 0).
GroundTruthInstance sample_views(const Dag& truth, std::size_t m, std::size_t u, std::uint64_t seed,
                                 std::size_t max_attempts = 10'000);

/// Draws a truth and views from (params, seed). When the views cannot be
/// sampled for a truth, a fresh truth is drawn from the same seed stream, up
/// to `max_truth_draws` times.
GroundTruthInstance generate_instance(const InstanceParams& params, std::uint64_t seed,
                                      std::size_t max_attempts = 10'000,
                                      std::size_t max_truth_draws = 100);

/// Ideal CAM-UV result for every view.
IntegrationInput project_all(const GroundTruthInstance& instance);

struct ErrorPlan {
    std::size_t spurious_n = 0;    // identified pair moved into N_k
    std::size_t dropped_edge = 0;  // A_k edge deleted
    std::size_t dropped_n = 0;     // N_k pair deleted (becomes identified absent)
    std::uint64_t seed = 0;
};

/// Applies spurious-n, then dropped-edge, then dropped-n injections, each
/// target drawn uniformly over all datasets. Throws NoEligibleTarget.
IntegrationInput inject_errors(const IntegrationInput& input, const ErrorPlan& plan);

} // namespace icamuv
