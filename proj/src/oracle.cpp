#include "icamuv/oracle.hpp"

#include <algorithm>
#include <set>

namespace icamuv::oracle {
namespace {

// i -> ... -> k -> j with k hidden; the prefix never visits j.
bool literal_ucp(const DirectedGraph& g, NodeSet hidden, NodeId from, NodeId to) {
    std::vector<bool> on_path(g.order(), false);
    on_path[from] = true;
    auto dfs = [&](auto&& self, NodeId v) -> bool {
        if (v != from && hidden.contains(v) && g.has_edge(v, to)) return true;
        for (NodeId w : g.children(v)) {
            if (w == to || on_path[w]) continue;
            on_path[w] = true;
            bool found = self(self, w);
            on_path[w] = false;
            if (found) return true;
        }
        return false;
    };
    return dfs(dfs, from);
}

// Forward leg a -> ... -> y, y hidden with y -> j, avoiding nodes on the path.
bool forward_leg(const DirectedGraph& g, NodeSet hidden, NodeId v, NodeId j,
                 std::vector<bool>& on_path) {
    if (hidden.contains(v) && g.has_edge(v, j)) return true;
    for (NodeId w : g.children(v)) {
        if (w == j || on_path[w]) continue;
        on_path[w] = true;
        bool found = forward_leg(g, hidden, w, j, on_path);
        on_path[w] = false;
        if (found) return true;
    }
    return false;
}

// Backward leg i <- x <- ... <- a; every node reached can serve as the apex.
bool backward_leg(const DirectedGraph& g, NodeSet hidden, NodeId a, NodeId j,
                  std::vector<bool>& on_path) {
    if (forward_leg(g, hidden, a, j, on_path)) return true;
    for (NodeId w : g.parents(a)) {
        if (w == j || on_path[w]) continue;
        on_path[w] = true;
        bool found = backward_leg(g, hidden, w, j, on_path);
        on_path[w] = false;
        if (found) return true;
    }
    return false;
}

// i <- x <- ... <- a -> ... -> y -> j with x, y hidden.
bool literal_ubp(const DirectedGraph& g, NodeSet hidden, NodeId i, NodeId j) {
    std::vector<bool> on_path(g.order(), false);
    on_path[i] = true;
    for (NodeId x : g.parents(i)) {
        if (!hidden.contains(x) || x == j) continue;
        on_path[x] = true;
        bool found = backward_leg(g, hidden, x, j, on_path);
        on_path[x] = false;
        if (found) return true;
    }
    return false;
}

bool literal_up(const DirectedGraph& g, NodeSet hidden, NodeId i, NodeId j) {
    return literal_ucp(g, hidden, i, j) || literal_ucp(g, hidden, j, i) ||
           literal_ubp(g, hidden, i, j);
}

struct Candidate {
    std::vector<Edge> edges;
    std::size_t cost;
};

} // namespace

bool exhaustive_up_check(const DirectedGraph& g, NodeSet observed, NodeId i, NodeId j) {
    if (g.order() > kPathCheckNodeCap) {
        throw CapExceeded("exhaustive path check is limited to 10 nodes");
    }
    if (i == j || !observed.contains(i) || !observed.contains(j)) {
        throw InvalidInput("exhaustive path check needs two distinct observed endpoints");
    }
    return literal_up(g, g.nodes() - observed, i, j);
}

std::size_t definitional_cost(const DirectedGraph& candidate, const IntegrationInput& input) {
    std::size_t cost = 0;
    for (const MixedGraph& dataset : input.results) {
        const auto ids = dataset.observed.to_vector();
        for (std::size_t a = 0; a < ids.size(); ++a) {
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                NodePair p(ids[a], ids[b]);
                bool in_n = std::find(dataset.unidentified.begin(), dataset.unidentified.end(), p) !=
                            dataset.unidentified.end();
                bool up = exhaustive_up_check(candidate, dataset.observed, p.lo, p.hi);
                if (in_n != up) ++cost;
            }
        }
    }
    return cost;
}

std::pair<DirectedGraph, std::vector<NodePair>> reference_overlap(const IntegrationInput& input) {
    const std::size_t n = input.order();
    std::set<Edge> union_edges;
    for (const MixedGraph& g : input.results) union_edges.insert(g.directed.begin(), g.directed.end());
    std::vector<Edge> edge_list(union_edges.begin(), union_edges.end());
    DirectedGraph merged(n, edge_list);
    if (!is_acyclic(merged)) throw CyclicGraph("overlapped graph is cyclic", find_cycle(merged));

    std::set<NodePair> open;
    for (const MixedGraph& g : input.results) {
        for (const NodePair& p : g.unidentified) {
            if (!union_edges.count({p.lo, p.hi}) && !union_edges.count({p.hi, p.lo})) open.insert(p);
        }
    }
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            bool seen_together = false;
            for (const MixedGraph& g : input.results) {
                seen_together = seen_together || (g.observed.contains(i) && g.observed.contains(j));
            }
            if (!seen_together) open.insert(NodePair(i, j));
        }
    }
    return {merged, std::vector<NodePair>(open.begin(), open.end())};
}

OracleResult brute_force_enumerate(const IntegrationInput& input, std::size_t budget, std::size_t cap,
                                   Execution execution) {
    input.validate();
    auto [merged, open] = reference_overlap(input);
    if (open.size() > cap) {
        throw CapExceeded("oracle: " + std::to_string(open.size()) + " open pairs exceed the cap of " +
                          std::to_string(cap));
    }

    OracleResult result;
    result.budget = budget;
    result.open_pairs = open;
    std::uint64_t patterns = 1;
    for (std::size_t s = 0; s < open.size(); ++s) patterns *= 3;
    result.assignments_examined = patterns;

    auto examine = [&](std::uint64_t code) -> std::optional<Candidate> {
        DirectedGraph g = merged;
        for (std::size_t s = 0; s < open.size(); ++s, code /= 3) {
            switch (code % 3) {
            case 1: g.add_edge_unchecked(open[s].lo, open[s].hi); break;
            case 2: g.add_edge_unchecked(open[s].hi, open[s].lo); break;
            default: break;
            }
        }
        if (!is_acyclic(g)) return std::nullopt;
        return Candidate{g.edges(), definitional_cost(g, input)};
    };

    std::vector<Candidate> dags;
    const auto count = static_cast<std::int64_t>(patterns);
    if (execution == Execution::Parallel) {
#pragma omp parallel
        {
            std::vector<Candidate> local;
#pragma omp for schedule(dynamic, 64) nowait
            for (std::int64_t code = 0; code < count; ++code) {
                if (auto c = examine(static_cast<std::uint64_t>(code))) local.push_back(std::move(*c));
            }
#pragma omp critical
            dags.insert(dags.end(), std::make_move_iterator(local.begin()),
                        std::make_move_iterator(local.end()));
        }
    } else {
        for (std::int64_t code = 0; code < count; ++code) {
            if (auto c = examine(static_cast<std::uint64_t>(code))) dags.push_back(std::move(*c));
        }
    }

    result.dag_count = dags.size();
    for (const Candidate& c : dags) ++result.cost_histogram[c.cost];
    if (!dags.empty()) result.c_star = result.cost_histogram.begin()->first;

    for (Candidate& c : dags) {
        if (c.cost <= *result.c_star + budget) {
            result.solutions.push_back({Dag(DirectedGraph(input.order(), c.edges)), c.cost});
        }
    }
    sort_solutions(result.solutions);
    return result;
}

} // namespace icamuv::oracle
