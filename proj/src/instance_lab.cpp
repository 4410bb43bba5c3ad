#include "icamuv/instance_lab.hpp"

#include "icamuv/paths.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace icamuv {
namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

struct EdgeCoverage {
    std::size_t co_observed = 0;
    std::size_t never_co_observed = 0;
};

EdgeCoverage edge_coverage(const Dag& truth, const std::vector<NodeSet>& views) {
    EdgeCoverage c;
    for (const Edge& e : truth.edges()) {
        bool together = std::any_of(views.begin(), views.end(), [&](NodeSet v) {
            return v.contains(e.from) && v.contains(e.to);
        });
        (together ? c.co_observed : c.never_co_observed) += 1;
    }
    return c;
}

std::string views_problem(const Dag& truth, const std::vector<NodeSet>& views, std::size_t u) {
    const std::size_t d = truth.order();
    NodeSet covered;
    for (std::size_t k = 0; k < views.size(); ++k) {
        if (static_cast<std::size_t>(views[k].size()) != d - u) return "view size differs from d - u";
        covered |= views[k];
        bool shares = false;
        for (std::size_t l = 0; l < views.size(); ++l) {
            if (l == k) continue;
            if (views[k] == views[l]) return "views are not pairwise distinct";
            shares = shares || !(views[k] & views[l]).empty();
        }
        if (!shares) return "a view shares no variable with the others";
    }
    if (covered != NodeSet::range(d)) return "views do not cover every variable";
    EdgeCoverage c = edge_coverage(truth, views);
    if (c.co_observed < u) return "fewer than u truth edges are co-observed";
    if (c.never_co_observed < u) return "fewer than u truth edges are never co-observed";
    return {};
}

void check_feasible(const Dag& truth, std::size_t m, std::size_t u) {
    if (m < 2) throw ConstraintsUnsatisfiable("at least two views are required");
    if (u == 0) throw ConstraintsUnsatisfiable("u = 0 makes every view the full variable set");
    if (u >= truth.order()) throw ConstraintsUnsatisfiable("u must be smaller than d");
    if (truth.graph().edge_count() < 2 * u) {
        throw ConstraintsUnsatisfiable("truth has fewer than 2u edges");
    }
}

} // namespace

void GroundTruthInstance::validate() const {
    if (views.size() != params.m) throw InvalidInput("instance holds the wrong number of views");
    if (truth.order() != params.d) throw InvalidInput("truth order differs from d");
    if (params.u >= params.d) throw InvalidInput("u must be smaller than d");
    if (auto problem = views_problem(truth, views, params.u); !problem.empty()) {
        throw InvalidInput("instance: " + problem);
    }
}

Dag gen_er_dag(std::size_t d, double p, std::uint64_t seed) {
    if (d < 1 || d > kMaxNodes) throw InvalidInput("d must lie in [1, 64]");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
    auto rng = make_rng(seed, 1);
    std::vector<NodeId> rank(d);
    std::iota(rank.begin(), rank.end(), NodeId{0});
    std::shuffle(rank.begin(), rank.end(), rng);
    std::vector<std::size_t> position(d);
    for (std::size_t r = 0; r < d; ++r) position[rank[r]] = r;

    std::bernoulli_distribution coin(p);
    DirectedGraph g(d);
    for (NodeId i = 0; i < d; ++i) {
        for (NodeId j = i + 1; j < d; ++j) {
            if (!coin(rng)) continue;
            if (position[i] < position[j]) {
                g.add_edge_unchecked(i, j);
            } else {
                g.add_edge_unchecked(j, i);
            }
        }
    }
    return Dag(std::move(g));
}

GroundTruthInstance sample_views(const Dag& truth, std::size_t m, std::size_t u, std::uint64_t seed,
                                 std::size_t max_attempts) {
    check_feasible(truth, m, u);
    const std::size_t d = truth.order();
    auto rng = make_rng(seed, 2);
    std::vector<NodeId> ids(d);
    std::vector<NodeSet> views(m);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        for (NodeSet& view : views) {
            std::iota(ids.begin(), ids.end(), NodeId{0});
            std::shuffle(ids.begin(), ids.end(), rng);
            view = NodeSet();
            for (std::size_t r = 0; r < d - u; ++r) view.insert(ids[r]);
        }
        if (views_problem(truth, views, u).empty()) {
            return GroundTruthInstance{truth, views, seed, InstanceParams{d, 0.0, m, u}};
        }
    }
    throw ConstraintsUnsatisfiable("no valid views after " + std::to_string(max_attempts) + " attempts");
}

GroundTruthInstance generate_instance(const InstanceParams& params, std::uint64_t seed,
                                      std::size_t max_attempts, std::size_t max_truth_draws) {
    auto seeds = make_rng(seed, 0);
    for (std::size_t draw = 0; draw < max_truth_draws; ++draw) {
        const std::uint64_t truth_seed = seeds();
        const std::uint64_t view_seed = seeds();
        Dag truth = gen_er_dag(params.d, params.p, truth_seed);
        try {
            GroundTruthInstance inst = sample_views(truth, params.m, params.u, view_seed, max_attempts);
            inst.seed = seed;
            inst.params = params;
            return inst;
        } catch (const ConstraintsUnsatisfiable&) {
            if (params.u == 0 || params.m < 2 || params.u >= params.d) throw;
        }
    }
    throw ConstraintsUnsatisfiable("no valid instance after " + std::to_string(max_truth_draws) +
                                   " truth draws");
}

IntegrationInput project_all(const GroundTruthInstance& instance) {
    IntegrationInput input{VariableTable::numbered(instance.truth.order()), {}};
    for (NodeSet view : instance.views) input.results.push_back(ideal_projection(instance.truth, view));
    return input;
}

IntegrationInput inject_errors(const IntegrationInput& input, const ErrorPlan& plan) {
    IntegrationInput out = input;
    auto rng = make_rng(plan.seed, 3);
    const std::size_t n = input.order();
    auto pick = [&rng](std::size_t count) {
        return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
    };

    for (std::size_t r = 0; r < plan.spurious_n; ++r) {
        std::vector<std::pair<std::size_t, NodePair>> targets;
        for (std::size_t k = 0; k < out.results.size(); ++k) {
            const MixedGraph& g = out.results[k];
            const auto ids = g.observed.to_vector();
            for (std::size_t a = 0; a < ids.size(); ++a) {
                for (std::size_t b = a + 1; b < ids.size(); ++b) {
                    NodePair p(ids[a], ids[b]);
                    if (!std::binary_search(g.unidentified.begin(), g.unidentified.end(), p)) {
                        targets.emplace_back(k, p);
                    }
                }
            }
        }
        if (targets.empty()) throw NoEligibleTarget("spurious-n: no identified pair left");
        auto [k, p] = targets[pick(targets.size())];
        MixedGraph& g = out.results[k];
        std::erase_if(g.directed, [&](const Edge& e) { return NodePair(e.from, e.to) == p; });
        g.unidentified.push_back(p);
        g = MixedGraph::make(n, g.observed, g.directed, g.unidentified);
    }

    for (std::size_t r = 0; r < plan.dropped_edge; ++r) {
        std::vector<std::pair<std::size_t, Edge>> targets;
        for (std::size_t k = 0; k < out.results.size(); ++k) {
            for (const Edge& e : out.results[k].directed) targets.emplace_back(k, e);
        }
        if (targets.empty()) throw NoEligibleTarget("dropped-edge: no directed edge left");
        auto [k, e] = targets[pick(targets.size())];
        MixedGraph& g = out.results[k];
        std::erase(g.directed, e);
        g = MixedGraph::make(n, g.observed, g.directed, g.unidentified);
    }

    for (std::size_t r = 0; r < plan.dropped_n; ++r) {
        std::vector<std::pair<std::size_t, NodePair>> targets;
        for (std::size_t k = 0; k < out.results.size(); ++k) {
            for (const NodePair& p : out.results[k].unidentified) targets.emplace_back(k, p);
        }
        if (targets.empty()) throw NoEligibleTarget("dropped-n: no unidentified pair left");
        auto [k, p] = targets[pick(targets.size())];
        MixedGraph& g = out.results[k];
        std::erase(g.unidentified, p);
        g = MixedGraph::make(n, g.observed, g.directed, g.unidentified);
    }
    return out;
}

} // namespace icamuv
