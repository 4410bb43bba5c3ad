#include "icamuv/metrics.hpp"

#include <algorithm>
#include <cstdint>

namespace icamuv {
namespace {

using CountMatrix = std::vector<std::vector<std::uint64_t>>;

CountMatrix edge_counts(std::span<const Dag> graphs) {
    if (graphs.empty()) throw EmptySolutionSet("metrics need at least one graph");
    const std::size_t n = graphs.front().order();
    CountMatrix counts(n, std::vector<std::uint64_t>(n, 0));
    for (const Dag& g : graphs) {
        if (g.order() != n) throw DimensionMismatch("graphs differ in variable count");
        for (const Edge& e : g.edges()) ++counts[e.from][e.to];
    }
    return counts;
}

std::optional<double> ratio(double num, double den) {
    if (den == 0.0) return std::nullopt;
    return num / den;
}

EdgeScores score(const CountMatrix& counts, std::uint64_t total, const Dag& truth,
                 const std::vector<bool>* allowed) {
    const std::size_t n = counts.size();
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            if (i == j) continue;
            if (allowed != nullptr) {
                NodePair p(i, j);
                if (!(*allowed)[p.lo * n + p.hi]) continue;
            }
            if (truth.has_edge(i, j)) {
                tp += counts[i][j];
                fn += total - counts[i][j];
            } else {
                fp += counts[i][j];
            }
        }
    }
    const double g = static_cast<double>(total);
    EdgeScores s;
    s.mtp = static_cast<double>(tp) / g;
    s.mfp = static_cast<double>(fp) / g;
    s.mfn = static_cast<double>(fn) / g;
    // Ratios from integer counts so singleton sets reproduce classical scores exactly.
    s.recall = ratio(static_cast<double>(tp), static_cast<double>(tp + fn));
    s.precision = ratio(static_cast<double>(tp), static_cast<double>(tp + fp));
    if (s.recall && s.precision) {
        s.f1 = (*s.recall == 0.0 || *s.precision == 0.0)
                   ? 0.0
                   : 2.0 * *s.recall * *s.precision / (*s.recall + *s.precision);
    }
    return s;
}

} // namespace

FrequencyMatrix edge_frequency(std::span<const Dag> graphs) {
    CountMatrix counts = edge_counts(graphs);
    const double total = static_cast<double>(graphs.size());
    FrequencyMatrix freq(counts.size(), std::vector<double>(counts.size(), 0.0));
    for (std::size_t i = 0; i < counts.size(); ++i) {
        for (std::size_t j = 0; j < counts.size(); ++j) {
            freq[i][j] = static_cast<double>(counts[i][j]) / total;
        }
    }
    return freq;
}

MetricsReport evaluate_metrics(std::span<const Dag> solutions, const Dag& truth,
                               const std::optional<std::vector<NodePair>>& restrict) {
    CountMatrix counts = edge_counts(solutions);
    const std::size_t n = counts.size();
    if (truth.order() != n) throw DimensionMismatch("truth and solutions differ in variable count");

    MetricsReport report;
    report.solution_count = solutions.size();
    report.frequencies = edge_frequency(solutions);
    report.overall = score(counts, solutions.size(), truth, nullptr);
    if (restrict) {
        std::vector<bool> allowed(n * n, false);
        for (const NodePair& p : *restrict) {
            if (p.hi >= n) throw DimensionMismatch("restriction pair out of range");
            allowed[p.lo * n + p.hi] = true;
        }
        report.restricted = score(counts, solutions.size(), truth, &allowed);
    }
    return report;
}

} // namespace icamuv
