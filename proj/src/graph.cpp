#include "icamuv/graph.hpp"

#include <algorithm>
#include <queue>

namespace icamuv {

std::vector<NodeId> NodeSet::to_vector() const {
    std::vector<NodeId> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (NodeId v : *this) out.push_back(v);
    return out;
}

VariableTable::VariableTable(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxNodes) {
        throw InvalidInput("variable table holds " + std::to_string(names_.size()) +
                           " names; at most 64 are supported");
    }
    for (NodeId i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw InvalidInput("variable names must be non-empty");
        if (!index_.emplace(names_[i], i).second) {
            throw InvalidInput("duplicate variable name '" + names_[i] + "'");
        }
    }
}

VariableTable VariableTable::numbered(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
    return VariableTable(std::move(names));
}

NodeId VariableTable::id_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw InvalidInput("unknown variable '" + name + "'");
    return it->second;
}

DirectedGraph::DirectedGraph(std::size_t order)
    : order_(order), children_(order), parents_(order) {
    if (order > kMaxNodes) {
        throw InvalidInput("graph order " + std::to_string(order) + " exceeds 64");
    }
}

DirectedGraph::DirectedGraph(std::size_t order, std::span<const Edge> edges) : DirectedGraph(order) {
    for (const Edge& e : edges) {
        check_edge(e);
        add_edge_unchecked(e.from, e.to);
    }
}

void DirectedGraph::check_edge(Edge e) const {
    if (e.from >= order_ || e.to >= order_) {
        throw InvalidInput("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                           ") out of range for order " + std::to_string(order_));
    }
    if (e.from == e.to) throw InvalidInput("self-loop on node " + std::to_string(e.from));
}

std::size_t DirectedGraph::edge_count() const {
    std::size_t n = 0;
    for (NodeSet row : children_) n += static_cast<std::size_t>(row.size());
    return n;
}

std::vector<Edge> DirectedGraph::edges() const {
    std::vector<Edge> out;
    for (NodeId u = 0; u < order_; ++u) {
        for (NodeId v : children_[u]) out.push_back({u, v});
    }
    return out;
}

DirectedGraph DirectedGraph::with_edge(Edge e) const {
    check_edge(e);
    DirectedGraph g = *this;
    g.add_edge_unchecked(e.from, e.to);
    return g;
}

DirectedGraph DirectedGraph::without_edge(Edge e) const {
    check_edge(e);
    DirectedGraph g = *this;
    g.children_[e.from].erase(e.to);
    g.parents_[e.to].erase(e.from);
    return g;
}

Dag::Dag(DirectedGraph g) : graph_(std::move(g)) {
    auto cycle = find_cycle(graph_);
    if (!cycle.empty()) throw CyclicGraph("graph is not acyclic", std::move(cycle));
}

MixedGraph MixedGraph::make(std::size_t order, NodeSet observed, std::vector<Edge> directed,
                            std::vector<NodePair> unidentified) {
    if ((observed - NodeSet::range(order)) != NodeSet()) {
        throw InvalidInput("observed set references ids beyond the variable table");
    }
    std::sort(directed.begin(), directed.end());
    directed.erase(std::unique(directed.begin(), directed.end()), directed.end());
    std::sort(unidentified.begin(), unidentified.end());
    unidentified.erase(std::unique(unidentified.begin(), unidentified.end()), unidentified.end());

    DirectedGraph g(order);
    for (const Edge& e : directed) {
        if (e.from == e.to) throw InvalidInput("self-loop in directed part");
        if (!observed.contains(e.from) || !observed.contains(e.to)) {
            throw InvalidInput("directed edge endpoint is not observed");
        }
        g.add_edge_unchecked(e.from, e.to);
    }
    if (!is_acyclic(g)) throw InvalidInput("directed part of a mixed graph must be acyclic");
    for (const NodePair& p : unidentified) {
        if (p.lo == p.hi) throw InvalidInput("self-pair in unidentified part");
        if (!observed.contains(p.lo) || !observed.contains(p.hi)) {
            throw InvalidInput("unidentified pair endpoint is not observed");
        }
        if (g.has_edge(p.lo, p.hi) || g.has_edge(p.hi, p.lo)) {
            throw InvalidInput("pair is both directed and unidentified");
        }
    }
    return MixedGraph{observed, std::move(directed), std::move(unidentified)};
}

bool is_acyclic(const DirectedGraph& g) { return find_cycle(g).empty(); }

std::vector<NodeId> topological_order(const DirectedGraph& g) {
    const std::size_t n = g.order();
    std::vector<int> indegree(n);
    for (NodeId v = 0; v < n; ++v) indegree[v] = g.parents(v).size();

    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.push(v);
    }
    std::vector<NodeId> order;
    order.reserve(n);
    while (!ready.empty()) {
        NodeId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (NodeId w : g.children(v)) {
            if (--indegree[w] == 0) ready.push(w);
        }
    }
    if (order.size() != n) throw CyclicGraph("graph has a directed cycle", find_cycle(g));
    return order;
}

std::vector<NodeId> find_cycle(const DirectedGraph& g) {
    const std::size_t n = g.order();
    enum : std::uint8_t { kWhite, kGrey, kBlack };
    std::vector<std::uint8_t> colour(n, kWhite);
    std::vector<NodeId> stack;
    std::vector<NodeSet> pending(n);

    for (NodeId root = 0; root < n; ++root) {
        if (colour[root] != kWhite) continue;
        stack.push_back(root);
        colour[root] = kGrey;
        pending[root] = g.children(root);
        while (!stack.empty()) {
            NodeId v = stack.back();
            if (pending[v].empty()) {
                colour[v] = kBlack;
                stack.pop_back();
                continue;
            }
            NodeId w = pending[v].front();
            pending[v].erase(w);
            if (colour[w] == kGrey) {
                auto it = std::find(stack.begin(), stack.end(), w);
                return {it, stack.end()};
            }
            if (colour[w] == kWhite) {
                colour[w] = kGrey;
                pending[w] = g.children(w);
                stack.push_back(w);
            }
        }
    }
    return {};
}

NodeSet reachable_avoiding(const DirectedGraph& g, NodeSet sources, NodeSet blocked) {
    NodeSet seen = sources - blocked;
    NodeSet frontier = seen;
    while (!frontier.empty()) {
        NodeSet next;
        for (NodeId v : frontier) next |= g.children(v);
        next = next - seen - blocked;
        seen |= next;
        frontier = next;
    }
    return seen;
}

NodeSet reaching_avoiding(const DirectedGraph& g, NodeSet targets, NodeSet blocked) {
    NodeSet seen = targets - blocked;
    NodeSet frontier = seen;
    while (!frontier.empty()) {
        NodeSet next;
        for (NodeId v : frontier) next |= g.parents(v);
        next = next - seen - blocked;
        seen |= next;
        frontier = next;
    }
    return seen;
}

bool closes_cycle(const DirectedGraph& g, NodeId from, NodeId to) {
    return reachable_avoiding(g, NodeSet{to}, NodeSet()).contains(from);
}

} // namespace icamuv
