#pragma once

#include "icamuv/integration.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace icamuv {

enum class EdgeOrderPolicy {
    /// Pairs mentioned by more datasets' unidentified sets first, then canonical.
    ConstrainedFirst,
    /// Canonical (lo, hi) order.
    Lex,
};

/// Throws InvalidInput for names other than "constrained-first" and "lex".
EdgeOrderPolicy parse_edge_order(std::string_view name);
std::string_view to_string(EdgeOrderPolicy policy);

std::vector<NodePair> edge_order(const OverlapResult& base, EdgeOrderPolicy policy);

/// `base` with open_pairs rearranged by `policy`.
OverlapResult with_edge_order(OverlapResult base, EdgeOrderPolicy policy);

/// Whether per-state kernels run on the calling thread or fan out via OpenMP.
/// Both produce identical results.
enum class Execution { Serial, Parallel };

struct SearchLimits {
    std::size_t max_popped = 2'000'000;
    std::chrono::milliseconds max_time{std::chrono::minutes(5)};
};

struct SearchOptions {
    std::size_t budget = 0;
    EdgeOrderPolicy order = EdgeOrderPolicy::ConstrainedFirst;
    SearchLimits limits;
    Execution execution = Execution::Serial;
    bool repair = false;
};

struct SearchState {
    Assignment assignment;     // first t decisions
    std::size_t priority = 0;  // lower bound at push time
    std::uint64_t sequence = 0;

    std::size_t t() const { return assignment.size(); }
};

enum class StopReason {
    Exhausted,       // queue emptied
    BudgetExceeded,  // popped priority above C* + b
    StateLimit,
    TimeLimit,
};

std::string_view to_string(StopReason reason);

struct Solution {
    Dag dag;
    std::size_t cost = 0;
};

struct SearchStats {
    std::size_t popped = 0;
    std::size_t pushed = 0;
    /// Expansions where a child's bound fell below its parent's.
    std::size_t monotonicity_violations = 0;
    double wall_seconds = 0.0;
};

struct EnumerationResult {
    VariableTable table;
    std::vector<NodePair> open_pairs;
    EdgeOrderPolicy order = EdgeOrderPolicy::ConstrainedFirst;
    std::optional<std::size_t> c_star;  // unknown if stopped before any solution
    std::size_t budget = 0;
    std::vector<Solution> solutions;     // sorted by (cost, edge list)
    StopReason stop = StopReason::Exhausted;
    SearchStats stats;

    bool complete() const {
        return stop == StopReason::Exhausted || stop == StopReason::BudgetExceeded;
    }
    std::size_t order_size() const { return table.size(); }
};

/// Orders solutions by (cost, sorted edge list).
void sort_solutions(std::vector<Solution>& solutions);

/// Children of a non-final state: for each later pair s, both orientations
/// that keep the graph acyclic (pairs between t and s stay Absent), then the
/// state with every remaining pair Absent. Priorities are filled in;
/// sequence numbers are left zero.
std::vector<SearchState> successors(const SearchState& state, const CostModel& model,
                                    Execution execution = Execution::Serial);

/// Fills `priority` of every state from the model's lower bound.
void evaluate_priorities(const CostModel& model, std::span<SearchState> states, Execution execution);

/// Best-first enumeration of every DAG over the overlapped graph and open
/// pairs whose inconsistency cost is at most C* + budget.
EnumerationResult enumerate(const IntegrationInput& input, const SearchOptions& options = {});

/// Same search starting from a prepared overlap; open_pairs are used in the
/// order given.
EnumerationResult enumerate(const VariableTable& table, const OverlapResult& base,
                            const SearchOptions& options);

} // namespace icamuv
