#include "doctest.h"
#include "fixtures.hpp"

#include "icamuv/enumeration.hpp"
#include "icamuv/integration.hpp"
#include "icamuv/oracle.hpp"

#include <algorithm>
#include <numeric>

using namespace icamuv;

namespace {

// Every total assignment over the open pairs, acyclic or not.
std::vector<Assignment> all_totals(std::size_t n) {
    std::vector<Assignment> out;
    std::size_t count = 1;
    for (std::size_t s = 0; s < n; ++s) count *= 3;
    for (std::size_t code = 0; code < count; ++code) {
        std::vector<PairState> codes(n);
        std::size_t c = code;
        for (std::size_t s = 0; s < n; ++s, c /= 3) codes[s] = static_cast<PairState>(c % 3);
        out.emplace_back(std::move(codes));
    }
    return out;
}

bool extends(const Assignment& total, const Assignment& prefix) {
    for (std::size_t s = 0; s < prefix.size(); ++s) {
        if (prefix[s] != total[s]) return false;
    }
    return true;
}

} // namespace

TEST_CASE("overlap of the two-dataset example") {
    OverlapResult base = overlap(testing::example_one());
    CHECK(base.overlapped.edges() == std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK(base.e_imp == std::vector<NodePair>{NodePair(0, 3), NodePair(1, 2)});
    CHECK(base.e_uno == std::vector<NodePair>{NodePair(0, 2)});
    CHECK(base.open_pairs == std::vector<NodePair>{NodePair(0, 2), NodePair(0, 3), NodePair(1, 2)});
    // I_1 = {v1,v2},{v2,v4}; I_2 = {v2,v4},{v3,v4}
    CHECK(base.identified[0] == std::vector<NodePair>{NodePair(0, 1), NodePair(1, 3)});
    CHECK(base.identified[1] == std::vector<NodePair>{NodePair(1, 3), NodePair(2, 3)});
}

TEST_CASE("pairs resolved by an edge elsewhere are not open") {
    IntegrationInput input{VariableTable::numbered(3), {}};
    input.results.push_back(MixedGraph::make(3, {0, 1}, {}, {NodePair(0, 1)}));
    input.results.push_back(MixedGraph::make(3, {0, 1, 2}, {{0, 1}}, {}));
    OverlapResult base = overlap(input);
    CHECK(base.e_imp.empty());
    CHECK(base.e_uno.empty());
}

TEST_CASE("overlap input validation") {
    IntegrationInput same{VariableTable::numbered(3), {}};
    same.results.push_back(MixedGraph::make(3, {0, 1, 2}, {}, {}));
    same.results.push_back(MixedGraph::make(3, {0, 1, 2}, {{0, 1}}, {}));
    CHECK_THROWS_AS(overlap(same), InvalidInput);

    IntegrationInput single{VariableTable::numbered(2), {MixedGraph::make(2, {0, 1}, {}, {})}};
    CHECK_THROWS_AS(overlap(single), InvalidInput);

    IntegrationInput disjoint{VariableTable::numbered(4), {}};
    disjoint.results.push_back(MixedGraph::make(4, {0, 1}, {}, {}));
    disjoint.results.push_back(MixedGraph::make(4, {2, 3}, {}, {}));
    CHECK_THROWS_AS(overlap(disjoint), InvalidInput);

    IntegrationInput uncovered{VariableTable::numbered(4), {}};
    uncovered.results.push_back(MixedGraph::make(4, {0, 1}, {}, {}));
    uncovered.results.push_back(MixedGraph::make(4, {1, 2}, {}, {}));
    CHECK_THROWS_AS(overlap(uncovered), InvalidInput);
}

TEST_CASE("cyclic overlap: strict failure and repair") {
    IntegrationInput input{VariableTable::numbered(3), {}};
    input.results.push_back(MixedGraph::make(3, {0, 1, 2}, {{0, 1}, {1, 2}}, {}));
    input.results.push_back(MixedGraph::make(3, {0, 2}, {{2, 0}}, {}));
    try {
        overlap(input);
        FAIL("expected CyclicOverlap");
    } catch (const CyclicOverlap& e) {
        CHECK(e.cycle().size() == 3);
    }
    OverlapResult repaired = overlap(input, true);
    CHECK(repaired.overlapped.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(repaired.dropped_edges == std::vector<Edge>{{2, 0}});
}

TEST_CASE("apply_assignment") {
    OverlapResult base = overlap(testing::example_one());
    CHECK(apply_assignment(base, Assignment()) == base.overlapped.graph());
    Assignment a = Assignment::from_pairs(base, {{NodePair(0, 2), PairState::Forward}});
    CHECK(apply_assignment(base, a) == base.overlapped.graph().with_edge({0, 2}));
    CHECK_THROWS_AS(Assignment::from_pairs(base, {{NodePair(0, 1), PairState::Forward}}), UnknownPair);
}

TEST_CASE("consistency on the two-dataset example") {
    const IntegrationInput input = testing::example_one();
    OverlapResult base = overlap(input);
    Dag forward(4, {{0, 1}, {2, 3}, {0, 2}});
    Dag backward(4, {{0, 1}, {2, 3}, {2, 0}});
    Dag missing(4, {{0, 1}, {2, 3}});
    CHECK(is_consistent(forward, base));
    CHECK(is_consistent(backward, base));
    CHECK_FALSE(is_consistent(missing, base));
    CHECK(inconsistency_cost(forward, base) == 0);
    // Definitional recount agrees.
    CHECK(oracle::definitional_cost(missing.graph(), input) == inconsistency_cost(missing, base));
}

TEST_CASE("empty constraints make every DAG consistent") {
    // A single-variable dataset has no pairs; the other sees only {v1, v2}
    // and marks nothing, so its I set is the one pair.
    IntegrationInput singles{VariableTable::numbered(2), {}};
    singles.results.push_back(MixedGraph::make(2, {0}, {}, {}));
    singles.results.push_back(MixedGraph::make(2, {0, 1}, {}, {}));
    OverlapResult base = overlap(singles);
    CHECK(base.identified[0].empty());
    CHECK(inconsistency_cost(Dag(2, {{0, 1}}), base) == 0);
}

TEST_CASE("lower bound equals the exact cost once every pair is decided") {
    std::uint64_t seed = 1;
    for (int trial = 0; trial < 15; ++trial, ++seed) {
        auto inst = testing::small_instance(6, 0.4, 2, 2, seed);
        IntegrationInput input = inject_errors(project_all(inst), ErrorPlan{1, trial % 2 ? 1u : 0u, 0, seed});
        OverlapResult base;
        try {
            base = overlap(input);
        } catch (const CyclicOverlap&) {
            continue;
        }
        if (base.open_pairs.size() > 6) continue;
        CostModel model(base);
        for (const Assignment& a : all_totals(base.open_pairs.size())) {
            DirectedGraph g = apply_assignment(base, a);
            if (!is_acyclic(g)) continue;
            CHECK(lower_bound_cost(a.size(), a, base) == inconsistency_cost(Dag(g), base));
        }
    }
}

TEST_CASE("lower bound never exceeds any completion's cost") {
    std::uint64_t seed = 100;
    for (int trial = 0; trial < 12; ++trial, ++seed) {
        auto inst = testing::small_instance(6, 0.4, 2, 2, seed);
        IntegrationInput input = inject_errors(project_all(inst), ErrorPlan{trial % 3 == 0 ? 1u : 0u, 0, 0, seed});
        OverlapResult base = overlap(input);
        const std::size_t n = base.open_pairs.size();
        if (n > 6) continue;
        CostModel model(base);
        auto totals = all_totals(n);
        std::mt19937_64 rng(seed);
        for (int probe = 0; probe < 30; ++probe) {
            const std::size_t t = rng() % (n + 1);
            std::vector<PairState> codes(t);
            for (auto& c : codes) c = static_cast<PairState>(rng() % 3);
            Assignment prefix(codes);
            if (!is_acyclic(apply_assignment(base, prefix))) continue;
            const std::size_t bound = model.lower_bound(prefix);
            for (const Assignment& total : totals) {
                if (!extends(total, prefix)) continue;
                DirectedGraph g = apply_assignment(base, total);
                if (is_acyclic(g)) CHECK(bound <= oracle::definitional_cost(g, input));
            }
        }
    }
}

TEST_CASE("ground truth is consistent under ideal projections") {
    std::uint64_t seed = 500;
    for (int trial = 0; trial < 40; ++trial, ++seed) {
        auto inst = testing::small_instance(8, 0.3, 2 + trial % 2, 2 + trial % 2, seed);
        OverlapResult base = overlap(project_all(inst));
        CHECK(inconsistency_cost(inst.truth, base) == 0);
    }
}

TEST_CASE("cost is invariant under dataset reordering and relabeling") {
    std::uint64_t seed = 900;
    for (int trial = 0; trial < 20; ++trial, ++seed) {
        auto inst = testing::small_instance(7, 0.35, 3, 2, seed);
        IntegrationInput input = inject_errors(project_all(inst), ErrorPlan{1, 0, 1, seed});
        OverlapResult base = overlap(input, true);
        Dag candidate = inst.truth;
        const std::size_t cost = inconsistency_cost(candidate, base);

        IntegrationInput reversed = input;
        std::reverse(reversed.results.begin(), reversed.results.end());
        CHECK(inconsistency_cost(candidate, overlap(reversed, true)) == cost);

        std::vector<NodeId> perm(7);
        std::iota(perm.begin(), perm.end(), NodeId{0});
        std::mt19937_64 rng(seed);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto map_set = [&](NodeSet s) {
            NodeSet out;
            for (NodeId v : s) out.insert(perm[v]);
            return out;
        };
        IntegrationInput relabeled{input.table, {}};
        for (const MixedGraph& g : input.results) {
            std::vector<Edge> directed;
            for (const Edge& e : g.directed) directed.push_back({perm[e.from], perm[e.to]});
            std::vector<NodePair> unidentified;
            for (const NodePair& p : g.unidentified) unidentified.emplace_back(perm[p.lo], perm[p.hi]);
            relabeled.results.push_back(MixedGraph::make(7, map_set(g.observed), directed, unidentified));
        }
        DirectedGraph moved(7);
        for (const Edge& e : candidate.edges()) moved.add_edge_unchecked(perm[e.from], perm[e.to]);
        CHECK(inconsistency_cost(Dag(moved), overlap(relabeled, true)) == cost);
    }
}
