#pragma once

#include "icamuv/errors.hpp"

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace icamuv {

using NodeId = std::size_t;

/// Graphs are stored as bitset adjacency rows; this bounds the variable count.
inline constexpr std::size_t kMaxNodes = 64;

/// Set of node ids backed by a 64-bit mask.
class NodeSet {
public:
    constexpr NodeSet() = default;
    constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}
    NodeSet(std::initializer_list<NodeId> ids) {
        for (NodeId id : ids) insert(id);
    }

    static NodeSet range(std::size_t n) {
        return NodeSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr bool contains(NodeId id) const { return id < 64 && ((bits_ >> id) & 1U) != 0; }
    void insert(NodeId id) { bits_ |= std::uint64_t{1} << id; }
    void erase(NodeId id) { bits_ &= ~(std::uint64_t{1} << id); }

    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }
    constexpr std::uint64_t bits() const { return bits_; }

    /// Smallest member; undefined on an empty set.
    NodeId front() const { return static_cast<NodeId>(std::countr_zero(bits_)); }

    constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
    constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
    constexpr NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }
    NodeSet& operator|=(NodeSet o) { bits_ |= o.bits_; return *this; }
    NodeSet& operator&=(NodeSet o) { bits_ &= o.bits_; return *this; }

    constexpr bool operator==(const NodeSet&) const = default;

    /// Members in ascending order.
    std::vector<NodeId> to_vector() const;

    class iterator {
    public:
        using value_type = NodeId;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        explicit iterator(std::uint64_t rest) : rest_(rest) {}
        NodeId operator*() const { return static_cast<NodeId>(std::countr_zero(rest_)); }
        iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        iterator operator++(int) { auto t = *this; ++*this; return t; }
        bool operator==(const iterator&) const = default;

    private:
        std::uint64_t rest_ = 0;
    };
    iterator begin() const { return iterator(bits_); }
    iterator end() const { return iterator(0); }

private:
    std::uint64_t bits_ = 0;
};

/// Ordered pair (source, target).
struct Edge {
    NodeId from = 0;
    NodeId to = 0;
    auto operator<=>(const Edge&) const = default;
};

/// Unordered pair, always stored with lo < hi.
struct NodePair {
    NodeId lo = 0;
    NodeId hi = 0;

    NodePair() = default;
    NodePair(NodeId a, NodeId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

    auto operator<=>(const NodePair&) const = default;
};

class VariableTable {
public:
    VariableTable() = default;
    explicit VariableTable(std::vector<std::string> names);

    /// Table with names "v1" ... "vN".
    static VariableTable numbered(std::size_t n);

    std::size_t size() const { return names_.size(); }
    const std::string& name(NodeId id) const { return names_.at(id); }
    const std::vector<std::string>& names() const { return names_; }
    /// Throws InvalidInput on unknown names.
    NodeId id_of(const std::string& name) const;

    bool operator==(const VariableTable& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
};

/// Directed graph over ids 0..order-1. Cycles are allowed; self-loops are not.
/// Values are immutable once built; `with_edge` returns a modified copy.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(std::size_t order);
    DirectedGraph(std::size_t order, std::span<const Edge> edges);
    DirectedGraph(std::size_t order, std::initializer_list<Edge> edges)
        : DirectedGraph(order, std::span<const Edge>(edges.begin(), edges.size())) {}

    std::size_t order() const { return order_; }
    NodeSet nodes() const { return NodeSet::range(order_); }
    NodeSet children(NodeId v) const { return children_[v]; }
    NodeSet parents(NodeId v) const { return parents_[v]; }
    bool has_edge(NodeId from, NodeId to) const { return children_[from].contains(to); }
    std::size_t edge_count() const;

    /// Edges sorted by (from, to).
    std::vector<Edge> edges() const;

    DirectedGraph with_edge(Edge e) const;
    DirectedGraph without_edge(Edge e) const;

    /// Children rows in node order; identifies the graph content.
    std::span<const NodeSet> adjacency() const { return children_; }

    bool operator==(const DirectedGraph& o) const {
        return order_ == o.order_ && children_ == o.children_;
    }

    // Unchecked mutation used by builders that already validated the edge.
    void add_edge_unchecked(NodeId from, NodeId to) {
        children_[from].insert(to);
        parents_[to].insert(from);
    }

private:
    void check_edge(Edge e) const;

    std::size_t order_ = 0;
    std::vector<NodeSet> children_;
    std::vector<NodeSet> parents_;
};

/// A DirectedGraph validated to be acyclic at construction.
class Dag {
public:
    Dag() = default;
    /// Throws CyclicGraph with a cycle witness.
    explicit Dag(DirectedGraph g);
    Dag(std::size_t order, std::initializer_list<Edge> edges) : Dag(DirectedGraph(order, edges)) {}

    const DirectedGraph& graph() const { return graph_; }
    std::size_t order() const { return graph_.order(); }
    std::vector<Edge> edges() const { return graph_.edges(); }
    bool has_edge(NodeId from, NodeId to) const { return graph_.has_edge(from, to); }

    bool operator==(const Dag& o) const { return graph_ == o.graph_; }

private:
    DirectedGraph graph_;
};

/// One dataset's CAM-UV result: observed variables, identified directed
/// edges and pairs left unidentified.
struct MixedGraph {
    NodeSet observed;
    std::vector<Edge> directed;          // sorted
    std::vector<NodePair> unidentified;  // sorted

    /// Sorts the edge lists and checks every invariant against `order`
    /// variables; throws InvalidInput.
    static MixedGraph make(std::size_t order, NodeSet observed, std::vector<Edge> directed,
                           std::vector<NodePair> unidentified);

    bool operator==(const MixedGraph&) const = default;
};

bool is_acyclic(const DirectedGraph& g);

/// Kahn's algorithm taking the smallest ready id first. Throws CyclicGraph.
std::vector<NodeId> topological_order(const DirectedGraph& g);
inline std::vector<NodeId> topological_order(const Dag& g) { return topological_order(g.graph()); }

/// One directed cycle of `g` in traversal order, or empty when acyclic.
std::vector<NodeId> find_cycle(const DirectedGraph& g);

/// Nodes reachable from `sources` by directed paths of length >= 0 that never
/// enter a blocked node.
NodeSet reachable_avoiding(const DirectedGraph& g, NodeSet sources, NodeSet blocked);

/// Same traversal on reversed edges: nodes that reach `targets`.
NodeSet reaching_avoiding(const DirectedGraph& g, NodeSet targets, NodeSet blocked);

/// True when adding from->to to the acyclic `g` would close a cycle.
bool closes_cycle(const DirectedGraph& g, NodeId from, NodeId to);

} // namespace icamuv
