#include "icamuv/constraints.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace icamuv {
namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

ConstraintSet ConstraintSet::normalized() const {
    ConstraintSet c = *this;
    sort_unique(c.sinks);
    sort_unique(c.required_edges);
    sort_unique(c.forbidden_edges);
    sort_unique(c.required_absent_pairs);
    return c;
}

ConstraintSet ConstraintSet::merged(const ConstraintSet& other) const {
    ConstraintSet c = *this;
    c.sinks.insert(c.sinks.end(), other.sinks.begin(), other.sinks.end());
    c.required_edges.insert(c.required_edges.end(), other.required_edges.begin(), other.required_edges.end());
    c.forbidden_edges.insert(c.forbidden_edges.end(), other.forbidden_edges.begin(),
                             other.forbidden_edges.end());
    c.required_absent_pairs.insert(c.required_absent_pairs.end(), other.required_absent_pairs.begin(),
                                   other.required_absent_pairs.end());
    return c.normalized();
}

bool ConstraintSet::empty() const {
    return sinks.empty() && required_edges.empty() && forbidden_edges.empty() &&
           required_absent_pairs.empty();
}

void ConstraintSet::check(std::size_t order) const {
    auto in_range = [order](NodeId v) { return v < order; };
    for (NodeId s : sinks) {
        if (!in_range(s)) throw InvalidInput("sink id out of range");
    }
    for (const auto* list : {&required_edges, &forbidden_edges}) {
        for (const Edge& e : *list) {
            if (!in_range(e.from) || !in_range(e.to) || e.from == e.to) {
                throw InvalidInput("constraint edge is out of range or a self-loop");
            }
        }
    }
    for (const NodePair& p : required_absent_pairs) {
        if (!in_range(p.hi) || p.lo == p.hi) throw InvalidInput("constraint pair is out of range");
    }

    const ConstraintSet c = normalized();
    for (const Edge& e : c.required_edges) {
        if (std::binary_search(c.forbidden_edges.begin(), c.forbidden_edges.end(), e)) {
            throw ContradictoryConstraints("an edge is both required and forbidden");
        }
        if (std::binary_search(c.required_absent_pairs.begin(), c.required_absent_pairs.end(),
                               NodePair(e.from, e.to))) {
            throw ContradictoryConstraints("a required edge lies on a pair required to be absent");
        }
        if (std::binary_search(c.sinks.begin(), c.sinks.end(), e.from)) {
            throw ContradictoryConstraints("a required edge leaves a sink");
        }
    }
    DirectedGraph required(order, c.required_edges);
    if (!is_acyclic(required)) throw ContradictoryConstraints("required edges form a cycle");
}

bool ConstraintSet::satisfied_by(const Dag& dag) const {
    const DirectedGraph& g = dag.graph();
    for (NodeId s : sinks) {
        if (!g.children(s).empty()) return false;
    }
    for (const Edge& e : required_edges) {
        if (!g.has_edge(e.from, e.to)) return false;
    }
    for (const Edge& e : forbidden_edges) {
        if (g.has_edge(e.from, e.to)) return false;
    }
    for (const NodePair& p : required_absent_pairs) {
        if (g.has_edge(p.lo, p.hi) || g.has_edge(p.hi, p.lo)) return false;
    }
    return true;
}

EnumerationResult filter_solutions(const EnumerationResult& result, const ConstraintSet& constraints) {
    constraints.check(result.order_size());
    EnumerationResult out = result;
    out.solutions.clear();
    for (const Solution& s : result.solutions) {
        if (constraints.satisfied_by(s.dag)) out.solutions.push_back(s);
    }
    return out;
}

std::vector<std::size_t> sample_indices(std::size_t count, std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> all(count);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (n >= count) return all;
    std::vector<std::size_t> picked;
    picked.reserve(n);
    std::mt19937_64 rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(picked), n, rng);
    return picked;
}

std::vector<Dag> sample_solutions(const EnumerationResult& result, std::size_t n, std::uint64_t seed) {
    std::vector<Dag> out;
    for (std::size_t i : sample_indices(result.solutions.size(), n, seed)) {
        out.push_back(result.solutions[i].dag);
    }
    return out;
}

FrequencyMatrix edge_frequency(const EnumerationResult& result) {
    std::vector<Dag> dags;
    dags.reserve(result.solutions.size());
    for (const Solution& s : result.solutions) dags.push_back(s.dag);
    return edge_frequency(std::span<const Dag>(dags));
}

} // namespace icamuv
