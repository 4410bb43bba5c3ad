#pragma once

#include "icamuv/graph.hpp"

#include <optional>
#include <span>
#include <vector>

namespace icamuv {

using FrequencyMatrix = std::vector<std::vector<double>>;

/// Entry (i, j) is the fraction of `graphs` containing edge i -> j.
/// Throws EmptySolutionSet / DimensionMismatch.
FrequencyMatrix edge_frequency(std::span<const Dag> graphs);

/// Frequency-weighted TP / FP / FN. Ratios are nullopt when 0/0.
struct EdgeScores {
    double mtp = 0.0;
    double mfp = 0.0;
    double mfn = 0.0;
    std::optional<double> recall;
    std::optional<double> precision;
    std::optional<double> f1;

    bool operator==(const EdgeScores&) const = default;
};

struct MetricsReport {
    std::size_t solution_count = 0;
    FrequencyMatrix frequencies;
    EdgeScores overall;
    /// Scores summed only over ordered pairs whose unordered pair is listed.
    std::optional<EdgeScores> restricted;

    bool operator==(const MetricsReport&) const = default;
};

MetricsReport evaluate_metrics(std::span<const Dag> solutions, const Dag& truth,
                               const std::optional<std::vector<NodePair>>& restrict = std::nullopt);

} // namespace icamuv
