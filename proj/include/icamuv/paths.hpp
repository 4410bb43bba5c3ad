#pragma once

#include "icamuv/graph.hpp"

#include <optional>
#include <vector>

namespace icamuv {

/// A graph together with the variables observed in one dataset. Every other
/// node of the graph counts as unobserved.
class ObservationView {
public:
    /// Throws InvalidInput when `observed` is empty or out of range.
    ObservationView(const DirectedGraph& graph, NodeSet observed);

    const DirectedGraph& graph() const { return *graph_; }
    NodeSet observed() const { return observed_; }
    NodeSet unobserved() const { return graph_->nodes() - observed_; }

private:
    const DirectedGraph* graph_;
    NodeSet observed_;
};

enum class PathKind { UcpForward, UcpBackward, Ubp };

/// A concrete path realising a UCP or UBP.
///
/// UcpForward:  nodes = [i, ..., k, j]  with edges pointing toward j, k unobserved.
/// UcpBackward: same shape from j to i.
/// Ubp:         nodes = [i, x, ..., a, ..., y, j] read as
///              i <- x <- ... <- a -> ... -> y -> j, with x and y unobserved;
///              `apex` indexes a inside `nodes`.
struct PathWitness {
    PathKind kind = PathKind::UcpForward;
    std::vector<NodeId> nodes;
    std::size_t apex = 0;

    bool operator==(const PathWitness&) const = default;
};

/// Directed UCP from i to j: i -> ... -> k -> j with k unobserved and the
/// prefix avoiding j. Returns the BFS-shortest witness, ties by smallest id.
std::optional<PathWitness> has_ucp_directed(const ObservationView& view, NodeId i, NodeId j);

/// UBP between i and j; the apex minimises the combined branch length,
/// ties by smallest id, so the two branches never share a node.
std::optional<PathWitness> has_ubp(const ObservationView& view, NodeId i, NodeId j);

/// Any UCP (either direction) or UBP between i and j.
bool up_nonempty(const ObservationView& view, NodeId i, NodeId j);

/// Witness-free form of up_nonempty over raw masks; the hot path of cost
/// evaluation. `unobserved` must be the complement of the observed set.
bool up_exists(const DirectedGraph& g, NodeSet unobserved, NodeId i, NodeId j);

/// Checks that `w` is a well-formed path of its declared kind in `view`.
bool witness_is_valid(const ObservationView& view, const PathWitness& w);

/// Ideal CAM-UV output for `truth` observed through `observed`: pairs with a
/// UCP/UBP become unidentified, remaining truth edges become directed.
MixedGraph ideal_projection(const Dag& truth, NodeSet observed);

} // namespace icamuv
