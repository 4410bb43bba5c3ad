#include "icamuv/integration.hpp"

#include "icamuv/paths.hpp"

#include <algorithm>
#include <set>

namespace icamuv {

void IntegrationInput::validate() const {
    const std::size_t n = table.size();
    if (results.size() < 2) throw InvalidInput("integration needs at least two datasets");
    NodeSet covered;
    for (std::size_t k = 0; k < results.size(); ++k) {
        const MixedGraph& g = results[k];
        if (g.observed.empty()) {
            throw InvalidInput("dataset " + std::to_string(k + 1) + " observes no variables");
        }
        // Re-run the mixed-graph checks against the table size.
        MixedGraph::make(n, g.observed, g.directed, g.unidentified);
        covered |= g.observed;
    }
    if (covered != NodeSet::range(n)) {
        throw InvalidInput("some table variables are observed in no dataset");
    }
    for (std::size_t k = 0; k < results.size(); ++k) {
        bool shares = false;
        for (std::size_t l = 0; l < results.size(); ++l) {
            if (l == k) continue;
            if (results[k].observed == results[l].observed) {
                throw InvalidInput("datasets " + std::to_string(k + 1) + " and " +
                                   std::to_string(l + 1) + " observe identical variable sets");
            }
            shares = shares || !(results[k].observed & results[l].observed).empty();
        }
        if (!shares) {
            throw InvalidInput("dataset " + std::to_string(k + 1) +
                               " shares no variable with any other dataset");
        }
    }
}

std::size_t OverlapResult::open_index(NodePair p) const {
    auto it = std::find(open_pairs.begin(), open_pairs.end(), p);
    return static_cast<std::size_t>(it - open_pairs.begin());
}

namespace {

void check_pair_count(std::size_t n) {
    if (n > Assignment::kMaxPairs) {
        throw CapExceeded("assignments support at most " + std::to_string(Assignment::kMaxPairs) +
                          " open pairs, got " + std::to_string(n));
    }
}

} // namespace

Assignment::Assignment(const std::vector<PairState>& codes) {
    check_pair_count(codes.size());
    size_ = static_cast<std::uint32_t>(codes.size());
    for (std::size_t s = 0; s < codes.size(); ++s) {
        if (codes[s] == PairState::Forward) forward_ |= std::uint64_t{1} << s;
        if (codes[s] == PairState::Backward) backward_ |= std::uint64_t{1} << s;
    }
}

std::vector<PairState> Assignment::codes() const {
    std::vector<PairState> out(size_);
    for (std::size_t s = 0; s < size_; ++s) out[s] = (*this)[s];
    return out;
}

Assignment Assignment::from_pairs(const OverlapResult& base,
                                  std::initializer_list<std::pair<NodePair, PairState>> decisions) {
    std::vector<PairState> codes(base.open_pairs.size(), PairState::Absent);
    for (const auto& [pair, state] : decisions) {
        std::size_t s = base.open_index(pair);
        if (s == base.open_pairs.size()) {
            throw UnknownPair("pair {" + std::to_string(pair.lo) + "," + std::to_string(pair.hi) +
                              "} is not an open pair");
        }
        codes[s] = state;
    }
    return Assignment(codes);
}

Assignment Assignment::extended(std::size_t s, PairState state) const {
    check_pair_count(s + 1);
    Assignment out = *this;
    out.size_ = static_cast<std::uint32_t>(s + 1);
    if (state == PairState::Forward) out.forward_ |= std::uint64_t{1} << s;
    if (state == PairState::Backward) out.backward_ |= std::uint64_t{1} << s;
    return out;
}

Assignment Assignment::finalized(std::size_t n) const {
    check_pair_count(n);
    Assignment out = *this;
    out.size_ = static_cast<std::uint32_t>(n);
    return out;
}

OverlapResult overlap(const IntegrationInput& input, bool repair) {
    input.validate();
    const std::size_t n = input.order();

    OverlapResult out;
    DirectedGraph merged(n);
    for (const MixedGraph& g : input.results) {
        for (const Edge& e : g.directed) {
            if (merged.has_edge(e.from, e.to)) continue;
            if (closes_cycle(merged, e.from, e.to)) {
                if (!repair) {
                    DirectedGraph cyclic = merged.with_edge(e);
                    throw CyclicOverlap("overlapped graph is cyclic", find_cycle(cyclic));
                }
                out.dropped_edges.push_back(e);
                continue;
            }
            merged.add_edge_unchecked(e.from, e.to);
        }
    }
    std::sort(out.dropped_edges.begin(), out.dropped_edges.end());
    out.dropped_edges.erase(std::unique(out.dropped_edges.begin(), out.dropped_edges.end()),
                            out.dropped_edges.end());

    std::set<NodePair> imp;
    for (const MixedGraph& g : input.results) {
        for (const NodePair& p : g.unidentified) {
            if (!merged.has_edge(p.lo, p.hi) && !merged.has_edge(p.hi, p.lo)) imp.insert(p);
        }
    }
    out.e_imp.assign(imp.begin(), imp.end());

    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            bool co_observed = std::any_of(input.results.begin(), input.results.end(),
                                           [&](const MixedGraph& g) {
                                               return g.observed.contains(i) && g.observed.contains(j);
                                           });
            if (!co_observed) out.e_uno.emplace_back(i, j);
        }
    }

    std::merge(out.e_imp.begin(), out.e_imp.end(), out.e_uno.begin(), out.e_uno.end(),
               std::back_inserter(out.open_pairs));

    for (const MixedGraph& g : input.results) {
        out.observed.push_back(g.observed);
        out.unidentified.push_back(g.unidentified);
        std::vector<NodePair> ident;
        const auto ids = g.observed.to_vector();
        for (std::size_t a = 0; a < ids.size(); ++a) {
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                NodePair p(ids[a], ids[b]);
                if (!std::binary_search(g.unidentified.begin(), g.unidentified.end(), p)) {
                    ident.push_back(p);
                }
            }
        }
        out.identified.push_back(std::move(ident));
    }
    out.overlapped = Dag(std::move(merged));
    return out;
}

DirectedGraph apply_assignment(const OverlapResult& base, const Assignment& a) {
    if (a.size() > base.open_pairs.size()) {
        throw UnknownPair("assignment has more decisions than open pairs");
    }
    DirectedGraph g = base.overlapped.graph();
    for (std::size_t s = 0; s < a.size(); ++s) {
        const NodePair& p = base.open_pairs[s];
        switch (a[s]) {
        case PairState::Forward: g.add_edge_unchecked(p.lo, p.hi); break;
        case PairState::Backward: g.add_edge_unchecked(p.hi, p.lo); break;
        case PairState::Absent: break;
        }
    }
    return g;
}

CostModel::CostModel(const OverlapResult& base) : base_(&base) {
    const NodeSet all = base.overlapped.graph().nodes();
    datasets_.reserve(base.dataset_count());
    for (std::size_t k = 0; k < base.dataset_count(); ++k) {
        datasets_.push_back({all - base.observed[k], base.identified[k], base.unidentified[k]});
    }
}

std::size_t CostModel::identified_violations(const DirectedGraph& g) const {
    std::size_t count = 0;
    for (const Dataset& d : datasets_) {
        for (const NodePair& p : d.identified) count += up_exists(g, d.hidden, p.lo, p.hi) ? 1 : 0;
    }
    return count;
}

std::size_t CostModel::unidentified_violations(const DirectedGraph& g) const {
    std::size_t count = 0;
    for (const Dataset& d : datasets_) {
        for (const NodePair& p : d.unidentified) count += up_exists(g, d.hidden, p.lo, p.hi) ? 0 : 1;
    }
    return count;
}

DirectedGraph CostModel::completion(const DirectedGraph& partial, std::size_t t) const {
    DirectedGraph g = partial;
    const auto& open = base_->open_pairs;
    for (std::size_t s = t; s < open.size(); ++s) {
        g.add_edge_unchecked(open[s].lo, open[s].hi);
        g.add_edge_unchecked(open[s].hi, open[s].lo);
    }
    return g;
}

std::size_t CostModel::lower_bound(const Assignment& prefix) const {
    DirectedGraph partial = apply_assignment(*base_, prefix);
    std::size_t bound = identified_violations(partial);
    if (prefix.size() == base_->open_pairs.size()) return bound + unidentified_violations(partial);
    return bound + unidentified_violations(completion(partial, prefix.size()));
}

bool is_consistent(const Dag& candidate, const OverlapResult& base) {
    return inconsistency_cost(candidate, base) == 0;
}

std::size_t inconsistency_cost(const Dag& candidate, const OverlapResult& base) {
    if (candidate.order() != base.order()) {
        throw DimensionMismatch("candidate order differs from the overlapped graph");
    }
    return CostModel(base).cost(candidate.graph());
}

std::size_t lower_bound_cost(std::size_t t, const Assignment& partial, const OverlapResult& base) {
    if (partial.size() != t) throw InvalidInput("partial assignment must decide exactly t pairs");
    return CostModel(base).lower_bound(partial);
}

} // namespace icamuv
