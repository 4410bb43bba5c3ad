#include "icamuv/enumeration.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace icamuv {

EdgeOrderPolicy parse_edge_order(std::string_view name) {
    if (name == "constrained-first") return EdgeOrderPolicy::ConstrainedFirst;
    if (name == "lex") return EdgeOrderPolicy::Lex;
    throw InvalidInput("unknown edge order policy '" + std::string(name) + "'");
}

std::string_view to_string(EdgeOrderPolicy policy) {
    return policy == EdgeOrderPolicy::Lex ? "lex" : "constrained-first";
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
    case StopReason::Exhausted: return "exhausted";
    case StopReason::BudgetExceeded: return "budget-exceeded";
    case StopReason::StateLimit: return "state-limit";
    case StopReason::TimeLimit: return "time-limit";
    }
    return "exhausted";
}

std::vector<NodePair> edge_order(const OverlapResult& base, EdgeOrderPolicy policy) {
    std::vector<NodePair> pairs = base.open_pairs;
    std::sort(pairs.begin(), pairs.end());
    if (policy == EdgeOrderPolicy::Lex) return pairs;

    std::map<NodePair, std::size_t> mentions;
    for (const auto& n_k : base.unidentified) {
        for (const NodePair& p : n_k) ++mentions[p];
    }
    std::stable_sort(pairs.begin(), pairs.end(), [&](const NodePair& a, const NodePair& b) {
        auto count = [&](const NodePair& p) {
            auto it = mentions.find(p);
            return it == mentions.end() ? std::size_t{0} : it->second;
        };
        return count(a) > count(b);
    });
    return pairs;
}

OverlapResult with_edge_order(OverlapResult base, EdgeOrderPolicy policy) {
    base.open_pairs = edge_order(base, policy);
    return base;
}

void sort_solutions(std::vector<Solution>& solutions) {
    std::vector<std::pair<std::size_t, std::vector<Edge>>> keys;
    keys.reserve(solutions.size());
    for (const Solution& s : solutions) keys.emplace_back(s.cost, s.dag.edges());
    std::vector<std::size_t> idx(solutions.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<Solution> sorted;
    sorted.reserve(solutions.size());
    for (std::size_t i : idx) sorted.push_back(std::move(solutions[i]));
    solutions = std::move(sorted);
}

void evaluate_priorities(const CostModel& model, std::span<SearchState> states, Execution execution) {
    const auto n = static_cast<std::ptrdiff_t>(states.size());
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1) if (n >= 8)
        for (std::ptrdiff_t s = 0; s < n; ++s) {
            states[static_cast<std::size_t>(s)].priority =
                model.lower_bound(states[static_cast<std::size_t>(s)].assignment);
        }
        return;
    }
    for (SearchState& state : states) state.priority = model.lower_bound(state.assignment);
}

std::vector<SearchState> successors(const SearchState& state, const CostModel& model,
                                    Execution execution) {
    const OverlapResult& base = model.base();
    const std::size_t total = base.open_pairs.size();
    std::vector<SearchState> out;
    if (state.t() >= total) return out;
    out.reserve(2 * (total - state.t()) + 1);

    const DirectedGraph graph = apply_assignment(base, state.assignment);
    for (std::size_t s = state.t(); s < total; ++s) {
        const NodePair& p = base.open_pairs[s];
        if (!closes_cycle(graph, p.lo, p.hi)) {
            out.push_back({state.assignment.extended(s, PairState::Forward), 0, 0});
        }
        if (!closes_cycle(graph, p.hi, p.lo)) {
            out.push_back({state.assignment.extended(s, PairState::Backward), 0, 0});
        }
    }
    out.push_back({state.assignment.finalized(total), 0, 0});
    evaluate_priorities(model, out, execution);
    return out;
}

namespace {

// Lowest priority first; ties go to deeper states, then to later insertions.
struct QueueOrder {
    bool operator()(const SearchState& a, const SearchState& b) const {
        if (a.priority != b.priority) return a.priority > b.priority;
        if (a.t() != b.t()) return a.t() < b.t();
        return a.sequence < b.sequence;
    }
};

} // namespace

EnumerationResult enumerate(const IntegrationInput& input, const SearchOptions& options) {
    OverlapResult base = with_edge_order(overlap(input, options.repair), options.order);
    return enumerate(input.table, base, options);
}

EnumerationResult enumerate(const VariableTable& table, const OverlapResult& base,
                            const SearchOptions& options) {
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    const CostModel model(base);
    const std::size_t total = base.open_pairs.size();

    EnumerationResult result;
    result.table = table;
    result.open_pairs = base.open_pairs;
    result.order = options.order;
    result.budget = options.budget;

    std::priority_queue<SearchState, std::vector<SearchState>, QueueOrder> queue;
    std::uint64_t sequence = 0;
    {
        SearchState root{Assignment(), 0, sequence++};
        root.priority = model.lower_bound(root.assignment);
        queue.push(std::move(root));
        ++result.stats.pushed;
    }

    result.stop = StopReason::Exhausted;
    while (!queue.empty()) {
        if (result.stats.popped >= options.limits.max_popped) {
            result.stop = StopReason::StateLimit;
            break;
        }
        if ((result.stats.popped & 0xFF) == 0 && Clock::now() - started > options.limits.max_time) {
            result.stop = StopReason::TimeLimit;
            break;
        }
        SearchState state = queue.top();
        queue.pop();
        ++result.stats.popped;

        if (result.c_star && state.priority > *result.c_star + options.budget) {
            result.stop = StopReason::BudgetExceeded;
            break;
        }
        if (state.t() == total) {
            if (!result.c_star) result.c_star = state.priority;
            result.solutions.push_back({Dag(apply_assignment(base, state.assignment)), state.priority});
            continue;
        }
        std::vector<SearchState> children = successors(state, model, options.execution);
        for (SearchState& child : children) {
            if (child.priority < state.priority) ++result.stats.monotonicity_violations;
            child.sequence = sequence++;
            queue.push(std::move(child));
            ++result.stats.pushed;
        }
    }

    sort_solutions(result.solutions);
    result.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return result;
}

} // namespace icamuv
