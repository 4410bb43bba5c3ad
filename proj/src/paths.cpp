#include "icamuv/paths.hpp"

#include <algorithm>
#include <limits>

namespace icamuv {
namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

struct BfsTree {
    std::vector<std::size_t> dist;
    std::vector<NodeId> link;  // predecessor (forward) or successor toward the targets (reverse)
};

// Multi-source BFS; sources are expanded in ascending id order and each
// node's neighbours in ascending order, so links are deterministic.
BfsTree bfs(const DirectedGraph& g, NodeSet sources, NodeSet blocked, bool reverse) {
    const std::size_t n = g.order();
    BfsTree t{std::vector<std::size_t>(n, kUnreached), std::vector<NodeId>(n, 0)};
    std::vector<NodeId> queue;
    queue.reserve(n);
    for (NodeId s : sources - blocked) {
        t.dist[s] = 0;
        t.link[s] = s;
        queue.push_back(s);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId v = queue[head];
        NodeSet next = (reverse ? g.parents(v) : g.children(v)) - blocked;
        for (NodeId w : next) {
            if (t.dist[w] != kUnreached) continue;
            t.dist[w] = t.dist[v] + 1;
            t.link[w] = v;
            queue.push_back(w);
        }
    }
    return t;
}

NodeSet unobserved_parents(const DirectedGraph& g, NodeSet unobserved, NodeId v) {
    return g.parents(v) & unobserved;
}

void check_endpoints(const ObservationView& view, NodeId i, NodeId j) {
    const std::size_t n = view.graph().order();
    if (i >= n || j >= n) throw InvalidInput("path query id out of range");
    if (i == j) throw InvalidInput("path query needs two distinct variables");
    if (!view.observed().contains(i) || !view.observed().contains(j)) {
        throw InvalidInput("path query endpoints must be observed");
    }
}

} // namespace

ObservationView::ObservationView(const DirectedGraph& graph, NodeSet observed)
    : graph_(&graph), observed_(observed) {
    if (observed.empty()) throw InvalidInput("observation view needs at least one observed node");
    if ((observed - graph.nodes()) != NodeSet()) {
        throw InvalidInput("observed set references ids beyond the graph");
    }
}

std::optional<PathWitness> has_ucp_directed(const ObservationView& view, NodeId i, NodeId j) {
    check_endpoints(view, i, j);
    const DirectedGraph& g = view.graph();
    NodeSet last_hops = unobserved_parents(g, view.unobserved(), j);
    if (last_hops.empty()) return std::nullopt;

    BfsTree tree = bfs(g, NodeSet{i}, NodeSet{j}, false);
    std::size_t best = kUnreached;
    NodeId k = 0;
    for (NodeId c : last_hops) {
        if (tree.dist[c] < best) {
            best = tree.dist[c];
            k = c;
        }
    }
    if (best == kUnreached) return std::nullopt;

    PathWitness w{PathKind::UcpForward, {j}, 0};
    for (NodeId v = k;; v = tree.link[v]) {
        w.nodes.push_back(v);
        if (v == i) break;
    }
    std::reverse(w.nodes.begin(), w.nodes.end());
    return w;
}

std::optional<PathWitness> has_ubp(const ObservationView& view, NodeId i, NodeId j) {
    check_endpoints(view, i, j);
    const DirectedGraph& g = view.graph();
    NodeSet t_i = unobserved_parents(g, view.unobserved(), i);
    NodeSet t_j = unobserved_parents(g, view.unobserved(), j);
    if (t_i.empty() || t_j.empty()) return std::nullopt;

    const NodeSet blocked{i, j};
    BfsTree to_i = bfs(g, t_i, blocked, true);
    BfsTree to_j = bfs(g, t_j, blocked, true);

    std::size_t best = kUnreached;
    NodeId apex = 0;
    for (NodeId a = 0; a < g.order(); ++a) {
        if (to_i.dist[a] == kUnreached || to_j.dist[a] == kUnreached) continue;
        std::size_t len = to_i.dist[a] + to_j.dist[a];
        if (len < best) {
            best = len;
            apex = a;
        }
    }
    if (best == kUnreached) return std::nullopt;

    // Branch toward i: apex -> ... -> x, written reversed after i.
    std::vector<NodeId> branch_i{apex};
    while (to_i.dist[branch_i.back()] != 0) branch_i.push_back(to_i.link[branch_i.back()]);
    std::vector<NodeId> branch_j{apex};
    while (to_j.dist[branch_j.back()] != 0) branch_j.push_back(to_j.link[branch_j.back()]);

    PathWitness w{PathKind::Ubp, {i}, branch_i.size()};
    w.nodes.insert(w.nodes.end(), branch_i.rbegin(), branch_i.rend());
    w.nodes.insert(w.nodes.end(), branch_j.begin() + 1, branch_j.end());
    w.nodes.push_back(j);
    return w;
}

bool up_nonempty(const ObservationView& view, NodeId i, NodeId j) {
    check_endpoints(view, i, j);
    return up_exists(view.graph(), view.unobserved(), i, j);
}

namespace {

// Forward search from `from` avoiding `blocked`; stops as soon as a target is hit.
bool reaches_any(const DirectedGraph& g, NodeId from, NodeSet blocked, NodeSet targets) {
    NodeSet seen{from};
    NodeSet frontier = seen;
    while (!frontier.empty()) {
        NodeSet next;
        for (NodeId v : frontier) next |= g.children(v);
        if (!(next & targets).empty()) return true;
        next = next - seen - blocked;
        seen |= next;
        frontier = next;
    }
    return false;
}

// Backward search from `sources` avoiding `blocked`; stops once it meets `targets`.
bool reached_by_any(const DirectedGraph& g, NodeSet sources, NodeSet blocked, NodeSet targets) {
    NodeSet seen = sources - blocked;
    NodeSet frontier = seen;
    while (!frontier.empty()) {
        if (!(frontier & targets).empty()) return true;
        NodeSet next;
        for (NodeId v : frontier) next |= g.parents(v);
        next = next - seen - blocked;
        seen |= next;
        frontier = next;
    }
    return false;
}

} // namespace

bool up_exists(const DirectedGraph& g, NodeSet unobserved, NodeId i, NodeId j) {
    const NodeSet t_i = g.parents(i) & unobserved;
    const NodeSet t_j = g.parents(j) & unobserved;
    if (t_i.empty() && t_j.empty()) return false;

    if (!t_j.empty() && reaches_any(g, i, NodeSet{j}, t_j)) return true;
    if (!t_i.empty() && reaches_any(g, j, NodeSet{i}, t_i)) return true;
    if (t_i.empty() || t_j.empty()) return false;
    if (!(t_i & t_j).empty()) return true;
    const NodeSet blocked{i, j};
    return reached_by_any(g, t_j, blocked, reaching_avoiding(g, t_i, blocked));
}

bool witness_is_valid(const ObservationView& view, const PathWitness& w) {
    const DirectedGraph& g = view.graph();
    const auto& p = w.nodes;
    if (p.size() < 3) return false;
    for (NodeId v : p) {
        if (v >= g.order()) return false;
    }
    std::vector<NodeId> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (!view.observed().contains(p.front()) || !view.observed().contains(p.back())) return false;

    const NodeSet hidden = view.unobserved();
    if (w.kind != PathKind::Ubp) {
        for (std::size_t s = 0; s + 1 < p.size(); ++s) {
            if (!g.has_edge(p[s], p[s + 1])) return false;
        }
        return hidden.contains(p[p.size() - 2]);
    }
    // i <- x <- ... <- a -> ... -> y -> j
    if (w.apex < 1 || w.apex > p.size() - 2) return false;
    for (std::size_t s = 0; s < w.apex; ++s) {
        if (!g.has_edge(p[s + 1], p[s])) return false;
    }
    for (std::size_t s = w.apex; s + 1 < p.size(); ++s) {
        if (!g.has_edge(p[s], p[s + 1])) return false;
    }
    return hidden.contains(p[1]) && hidden.contains(p[p.size() - 2]);
}

MixedGraph ideal_projection(const Dag& truth, NodeSet observed) {
    const DirectedGraph& g = truth.graph();
    if ((observed - g.nodes()) != NodeSet()) {
        throw InvalidInput("observed set references ids beyond the ground truth");
    }
    const NodeSet hidden = g.nodes() - observed;
    std::vector<Edge> directed;
    std::vector<NodePair> unidentified;
    const auto ids = observed.to_vector();
    for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            NodeId i = ids[a];
            NodeId j = ids[b];
            if (up_exists(g, hidden, i, j)) {
                unidentified.emplace_back(i, j);
            } else if (g.has_edge(i, j)) {
                directed.push_back({i, j});
            } else if (g.has_edge(j, i)) {
                directed.push_back({j, i});
            }
        }
    }
    return MixedGraph::make(g.order(), observed, std::move(directed), std::move(unidentified));
}

} // namespace icamuv
