#include "doctest.h"
#include "fixtures.hpp"

#include "icamuv/oracle.hpp"
#include "icamuv/paths.hpp"

using namespace icamuv;

TEST_CASE("UCP through the hidden middle of a chain") {
    DirectedGraph g(6, {{3, 4}, {4, 5}});
    ObservationView view(g, {3, 5});
    auto w = has_ucp_directed(view, 3, 5);
    REQUIRE(w);
    CHECK(w->kind == PathKind::UcpForward);
    CHECK(w->nodes == std::vector<NodeId>{3, 4, 5});
    CHECK(witness_is_valid(view, *w));
    CHECK_FALSE(has_ucp_directed(view, 5, 3));
}

TEST_CASE("a direct edge is not a UCP") {
    DirectedGraph g(3, {{0, 2}});
    ObservationView view(g, {0, 2});
    CHECK_FALSE(has_ucp_directed(view, 0, 2));
    CHECK_FALSE(up_nonempty(view, 0, 2));
}

TEST_CASE("fully observed graphs have no UCP or UBP") {
    DirectedGraph g(4, {{0, 1}, {1, 2}, {0, 3}, {3, 2}});
    ObservationView view(g, NodeSet::range(4));
    for (NodeId i = 0; i < 4; ++i) {
        for (NodeId j = 0; j < 4; ++j) {
            if (i == j) continue;
            CHECK_FALSE(has_ucp_directed(view, i, j));
            CHECK_FALSE(has_ubp(view, i, j));
        }
    }
}

TEST_CASE("UBP through a hidden common parent") {
    DirectedGraph g(3, {{0, 1}, {0, 2}});
    ObservationView view(g, {1, 2});
    auto w = has_ubp(view, 1, 2);
    REQUIRE(w);
    CHECK(w->nodes == std::vector<NodeId>{1, 0, 2});
    CHECK(w->apex == 1);
    CHECK(witness_is_valid(view, *w));
}

TEST_CASE("observed confounder blocks the UBP") {
    DirectedGraph g(3, {{1, 0}, {1, 2}});
    CHECK_FALSE(has_ubp(ObservationView(g, {0, 1, 2}), 0, 2));
}

TEST_CASE("UBP whose apex is the hidden parent of the first endpoint") {
    DirectedGraph g(5, {{3, 1}, {3, 4}, {4, 2}});
    ObservationView view(g, {1, 2});
    // Independent check by literal path enumeration.
    REQUIRE(oracle::exhaustive_up_check(g, {1, 2}, 1, 2));
    auto w = has_ubp(view, 1, 2);
    REQUIRE(w);
    CHECK(w->nodes == std::vector<NodeId>{1, 3, 4, 2});
    CHECK(w->nodes[w->apex] == 3);
    CHECK(witness_is_valid(view, *w));
}

TEST_CASE("up_nonempty on the two-path graph") {
    Dag truth = testing::two_path_truth();
    ObservationView view(truth.graph(), {1, 2, 3, 5});
    CHECK(up_nonempty(view, 3, 5));
    CHECK(up_nonempty(view, 1, 2));
    CHECK_FALSE(up_nonempty(view, 1, 3));
    CHECK(oracle::exhaustive_up_check(truth.graph(), {1, 2, 3, 5}, 3, 5));

    DirectedGraph empty(6);
    CHECK_FALSE(up_nonempty(ObservationView(empty, {1, 2}), 1, 2));
}

TEST_CASE("queries reject unobserved or equal endpoints") {
    DirectedGraph g(3, {{0, 1}});
    ObservationView view(g, {0, 1});
    CHECK_THROWS_AS(has_ucp_directed(view, 0, 2), InvalidInput);
    CHECK_THROWS_AS(has_ubp(view, 0, 0), InvalidInput);
    CHECK_THROWS_AS(ObservationView(g, NodeSet()), InvalidInput);
}

TEST_CASE("ideal projection of the two-path graph") {
    MixedGraph g = ideal_projection(testing::two_path_truth(), {1, 2, 3, 5});
    CHECK(g.directed.empty());
    CHECK(g.unidentified == std::vector<NodePair>{NodePair(1, 2), NodePair(3, 5)});
}

TEST_CASE("ideal projection with everything observed is the identity") {
    Dag truth(4, {{0, 1}, {1, 2}, {0, 3}});
    MixedGraph g = ideal_projection(truth, NodeSet::range(4));
    CHECK(g.directed == truth.edges());
    CHECK(g.unidentified.empty());

    MixedGraph h = ideal_projection(Dag(3, {{0, 1}}), {0, 1});
    CHECK(h.directed == std::vector<Edge>{{0, 1}});
    CHECK(h.unidentified.empty());
}

TEST_CASE("unidentified takes precedence over a direct edge") {
    // 0 -> 2 directly and 0 -> 1 -> 2 with 1 hidden.
    MixedGraph g = ideal_projection(Dag(3, {{0, 2}, {0, 1}, {1, 2}}), {0, 2});
    CHECK(g.directed.empty());
    CHECK(g.unidentified == std::vector<NodePair>{NodePair(0, 2)});
}

TEST_CASE("cyclic graphs: witnesses stay simple") {
    DirectedGraph g(5, {{0, 3}, {3, 0}, {3, 4}, {4, 3}, {4, 1}, {0, 2}, {2, 0}});
    ObservationView view(g, {1, 2});
    auto w = has_ubp(view, 1, 2);
    REQUIRE(w);
    CHECK(witness_is_valid(view, *w));
}

TEST_CASE("detector agrees with literal enumeration on random views") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1500; ++trial) {
        const std::size_t n = 4 + trial % 4;
        DirectedGraph g = testing::random_digraph(n, trial % 2 ? 0.2 : 0.35, rng);
        NodeSet observed = testing::random_view(n, rng);
        ObservationView view(g, observed);
        auto ids = observed.to_vector();
        for (std::size_t a = 0; a < ids.size(); ++a) {
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                NodeId i = ids[a];
                NodeId j = ids[b];
                bool fast = up_nonempty(view, i, j);
                REQUIRE(fast == oracle::exhaustive_up_check(g, observed, i, j));
                for (auto w : {has_ucp_directed(view, i, j), has_ucp_directed(view, j, i), has_ubp(view, i, j)}) {
                    if (w) CHECK(witness_is_valid(view, *w));
                }
            }
        }
    }
}

TEST_CASE("up_nonempty is monotone under edge addition") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        DirectedGraph g = testing::random_digraph(6, 0.2, rng);
        DirectedGraph bigger = g;
        for (int extra = 0; extra < 3; ++extra) {
            NodeId a = rng() % 6;
            NodeId b = (a + 1 + rng() % 5) % 6;
            bigger.add_edge_unchecked(a, b);
        }
        NodeSet observed = testing::random_view(6, rng);
        const NodeSet hidden = g.nodes() - observed;
        for (NodeId i : observed) {
            for (NodeId j : observed) {
                if (i < j && up_exists(g, hidden, i, j)) CHECK(up_exists(bigger, hidden, i, j));
            }
        }
    }
}
