#include "fixtures.hpp"

namespace icamuv::testing {

IntegrationInput example_one() {
    IntegrationInput input{VariableTable::numbered(4), {}};
    input.results.push_back(MixedGraph::make(4, NodeSet{0, 1, 3}, {{0, 1}}, {NodePair(0, 3)}));
    input.results.push_back(MixedGraph::make(4, NodeSet{1, 2, 3}, {{2, 3}}, {NodePair(1, 2)}));
    return input;
}

Dag two_path_truth() { return Dag(6, {{0, 1}, {0, 2}, {3, 4}, {4, 5}}); }

DirectedGraph random_digraph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    DirectedGraph g(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            if (i != j && coin(rng)) g.add_edge_unchecked(i, j);
        }
    }
    return g;
}

NodeSet random_view(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> bits(0, (std::uint64_t{1} << n) - 1);
    for (;;) {
        NodeSet s(bits(rng));
        if (s.size() >= 2) return s;
    }
}

GroundTruthInstance small_instance(std::size_t d, double p, std::size_t m, std::size_t u,
                                   std::uint64_t& seed) {
    for (;; ++seed) {
        try {
            return generate_instance(InstanceParams{d, p, m, u}, seed, 2'000, 5);
        } catch (const ConstraintsUnsatisfiable&) {
        }
    }
}

} // namespace icamuv::testing
