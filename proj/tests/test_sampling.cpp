#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "dspd/error.hpp"
#include "dspd/rng.hpp"
#include "dspd/sampling.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dspd;

namespace {

Graph path(int n) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return Graph::from_edges(n, edges);
}

Graph star(int leaves) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 1; i <= leaves; ++i) {
        edges.emplace_back(0, i);
    }
    return Graph::from_edges(leaves + 1, edges);
}

void check_sample(const Graph& g, const SampleResult& r, std::int64_t s, bool snowball) {
    REQUIRE(static_cast<std::int64_t>(r.nodes.size()) == s);
    std::set<NodeId> seen;
    for (NodeId v : r.nodes) {
        REQUIRE(v < g.node_count());
        REQUIRE(seen.insert(v).second);
    }
    std::set<NodeId> seeds(r.seed_nodes.begin(), r.seed_nodes.end());
    for (NodeId v : seeds) {
        REQUIRE(seen.count(v) == 1);
    }
    if (!snowball) {
        REQUIRE(r.seed_nodes.size() == r.nodes.size());
        return;
    }
    std::set<NodeId> earlier;
    for (NodeId v : r.nodes) {
        if (seeds.count(v) == 0) {
            const auto adj = g.neighbors(v);
            REQUIRE(std::any_of(adj.begin(), adj.end(), [&](NodeId u) { return earlier.count(u) > 0; }));
        }
        earlier.insert(v);
    }
}

} // namespace

TEST_SUITE("sampling") {

TEST_CASE("method names") {
    CHECK(parse_sampling_method("rand") == SamplingMethod::random);
    CHECK(parse_sampling_method("snowball") == SamplingMethod::snowball);
    CHECK(to_string(SamplingMethod::snowball) == "snowball");
    CHECK_THROWS_AS(parse_sampling_method("walk"), ParameterError);
    CHECK_THROWS_AS(validate(SampleSpec{SamplingMethod::snowball, 5, 0.0}), ParameterError);
    CHECK_THROWS_AS(validate(SampleSpec{SamplingMethod::random, 0, 0.5}), ParameterError);
}

TEST_CASE("random sample boundaries and determinism") {
    const Graph g = path(30);
    check_sample(g, draw_random_sample(g, 29, 3), 29, false);
    CHECK_THROWS_AS(draw_random_sample(g, 30, 3), ParameterError);
    CHECK_THROWS_AS(draw_random_sample(g, 0, 3), ParameterError);
    CHECK(draw_random_sample(g, 10, 8).nodes == draw_random_sample(g, 10, 8).nodes);
}

TEST_CASE("random sample is uniform over nodes") {
    const Graph g = path(3);
    std::array<int, 3> counts{};
    const int trials = 10000;
    for (int seed = 0; seed < trials; ++seed) {
        ++counts[draw_random_sample(g, 1, mix_seed(5, seed)).nodes.front()];
    }
    double chi2 = 0.0;
    for (int c : counts) {
        const double e = trials / 3.0;
        chi2 += (c - e) * (c - e) / e;
    }
    // 99.9% quantile of chi-square with 2 degrees of freedom.
    CHECK(chi2 < 13.82);
}

TEST_CASE("snowball on a path follows FIFO acceptance") {
    const Graph g = path(4);
    const SampleResult r = draw_snowball_sample(g, 3, 1.0, 1, NodeId{0});
    CHECK(r.nodes == std::vector<NodeId>{0, 1, 2});
    CHECK(r.seed_nodes == std::vector<NodeId>{0});
}

TEST_CASE("snowball of size one is a single seed") {
    const Graph g = star(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SampleResult r = draw_snowball_sample(g, 1, 0.5, seed);
        CHECK(r.nodes.size() == 1);
        CHECK(r.seed_nodes == r.nodes);
    }
}

TEST_CASE("snowball restarts from fresh seeds and exhausts") {
    // Two disjoint edges; retention 1 needs a second seed to reach 3 nodes.
    const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {2, 3}};
    const Graph g = Graph::from_edges(4, edges);
    const SampleResult r = draw_snowball_sample(g, 3, 1.0, 9, NodeId{0});
    CHECK(r.seed_nodes.size() == 2);
    check_sample(g, r, 3, true);

    // Without edges every node is its own seed.
    const Graph empty = Graph::from_edges(5, {});
    check_sample(empty, draw_snowball_sample(empty, 4, 0.5, 1), 4, true);

    // Starting from the center of a star, a near-zero retention discards every
    // leaf, leaving no undecided node for a fresh seed.
    const Graph s = star(3);
    int exhausted = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        try {
            draw_snowball_sample(s, 3, 1e-9, seed, NodeId{0});
        } catch (const ExhaustionError&) {
            ++exhausted;
        }
    }
    CHECK(exhausted == 50);
    CHECK_THROWS_AS(draw_snowball_sample(s, 2, 0.5, 1, NodeId{10}), ParameterError);
}

TEST_CASE("snowball invariant on a binomial graph") {
    const Graph g = generate(BinomialSpec{20000, 0.0005}, 3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        check_sample(g, draw_snowball_sample(g, 200, 0.5, seed), 200, true);
    }
}

TEST_CASE("sampler invariants on random graphs" * doctest::description("randomized")) {
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < testing::kPropertyCases; ++i) {
        const Graph g = testing::random_graph(gen);
        const auto s = 1 + static_cast<std::int64_t>(u(gen) * static_cast<double>(g.node_count() - 1));
        const std::uint64_t seed = gen();
        check_sample(g, draw_random_sample(g, s, seed), s, false);
        const double retention = 0.05 + 0.95 * u(gen);
        try {
            const auto r = draw_snowball_sample(g, s, retention, seed);
            check_sample(g, r, s, true);
            CHECK(r.nodes == draw_snowball_sample(g, s, retention, seed).nodes);
        } catch (const ExhaustionError&) {
            // Legitimate when discarded nodes leave too few undecided ones.
        }
    }
}

TEST_CASE("random supernode law") {
    const Pmf p = binomial_pmf(19999, 0.0005);
    const Pmf same = supernode_pmf_random(p, 1);
    CHECK(same.size() == p.size());
    const Pmf six = supernode_pmf_random(Pmf::point_mass(3), 2);
    CHECK(six.is_point_mass());
    CHECK(six.min_degree() == 6);
    CHECK(mean(supernode_pmf_random(p, 200)) == doctest::Approx(200 * mean(p)).epsilon(1e-6));
}

TEST_CASE("random supernode law against summed degrees of random samples") {
    // The supernode law assumes no edges inside the sample, so its reference
    // quantity is the summed degree of the sampled nodes. Each graph's own
    // degree law is fed to the supernode law, which removes the graph-to-graph
    // fluctuation of the mean degree from the comparison.
    const BinomialSpec spec{20000, 0.0005};
    std::vector<std::int64_t> sums;
    Pmf reference;
    for (int gi = 0; gi < 50; ++gi) {
        const Graph g = generate(spec, mix_seed(31, gi));
        std::vector<double> counts;
        for (std::int64_t v = 0; v < g.node_count(); ++v) {
            const auto k = static_cast<std::size_t>(g.degree(static_cast<NodeId>(v)));
            counts.resize(std::max(counts.size(), k + 1), 0.0);
            counts[k] += 1.0;
        }
        const Pmf law = supernode_pmf_random(Pmf::from_weights(0, counts), 200);
        reference = gi == 0 ? law : mixture(law, reference, 1.0 / (gi + 1));
        for (int j = 0; j < 200; ++j) {
            const auto r = draw_random_sample(g, 200, mix_seed(mix_seed(31, gi), j + 1));
            std::int64_t total = 0;
            for (NodeId v : r.nodes) {
                total += g.degree(v);
            }
            sums.push_back(total);
        }
    }
    CHECK(oracle::ks_statistic(sums, reference) <= 0.02);
    // The ensemble law has the same mean as the pooled per-graph laws.
    const Pmf ensemble = supernode_pmf_random(binomial_pmf(19999, 0.0005), 200);
    CHECK(mean(ensemble) == doctest::Approx(mean(reference)).epsilon(0.01));
}

TEST_CASE("snowball supernode law") {
    testing::QuietWarnings quiet;
    const Pmf two = supernode_pmf_snowball(Pmf::point_mass(3), 2);
    CHECK(two.is_point_mass());
    CHECK(two.min_degree() == 2);
    const Pmf one = supernode_pmf_snowball(Pmf::point_mass(3), 1);
    CHECK(one.min_degree() == 1);

    const Pmf a = power_law_pmf(2.0, 6, 29);
    CHECK(mean(supernode_pmf_snowball(a, 200)) == doctest::Approx(200 * mean(degree_weighted(a)) - 400).epsilon(1e-6));

    CHECK_THROWS_AS(supernode_pmf_snowball(Pmf::point_mass(1), 3), DegenerateInputError);
    CHECK_THROWS_AS(supernode_pmf_snowball(a, 0), ParameterError);
}

TEST_CASE("snowball supernode clamps with a warning") {
    std::vector<std::string> warnings;
    auto previous = log::set_warning_sink([&](std::string_view m) { warnings.emplace_back(m); });
    const Pmf p = Pmf::from_weights(1, {0.5, 0.0, 0.5});
    const Pmf got = supernode_pmf_snowball(p, 1);
    log::set_warning_sink(previous);
    REQUIRE(warnings.size() == 1);
    // Size-biased law {1: 1/4, 3: 3/4}, shifted by -2, mass at -1 clamped to 0.
    CHECK(got(0) == doctest::Approx(0.25));
    CHECK(got(1) == doctest::Approx(0.75));
}

TEST_CASE("within-block reach probability edge cases") {
    const Pmf pw = binomial_pmf(171, 0.08323);
    const Pmf pa = binomial_pmf(22188, 0.00004718);
    CHECK(within_block_reach_probability(pw, Pmf::point_mass(0)) == 1.0);
    CHECK(within_block_reach_probability(Pmf::point_mass(0), pa) == 0.0);
    CHECK_THROWS_AS(within_block_reach_probability(Pmf::point_mass(0), Pmf::point_mass(0)), DegenerateInputError);
    const double pw_reach = within_block_reach_probability(pw, pa);
    CHECK(pw_reach > 0.0);
    CHECK(pw_reach < 1.0);
}

TEST_CASE("within-block reach probability against a traversal simulation") {
    // Walk along edges: a node reached by an edge of type T has the
    // size-biased degree for T (counting the arrival edge) and the plain law
    // for the other type; the next edge is one of its other edges, uniformly.
    const Pmf pw = binomial_pmf(171, 0.08323);
    const Pmf pa = binomial_pmf(22188, 0.00004718);
    oracle::PmfSampler w_plain(pw);
    oracle::PmfSampler a_plain(pa);
    oracle::PmfSampler w_biased(degree_weighted(pw));
    oracle::PmfSampler a_biased(degree_weighted(pa));
    std::mt19937_64 gen(5);
    bool within = true;
    std::int64_t within_steps = 0;
    const std::int64_t steps = 2000000;
    std::int64_t taken = 0;
    while (taken < steps) {
        const std::int64_t kw = within ? w_biased(gen) : w_plain(gen);
        const std::int64_t ka = within ? a_plain(gen) : a_biased(gen);
        const std::int64_t onward_w = within ? kw - 1 : kw;
        const std::int64_t onward_a = within ? ka : ka - 1;
        if (onward_w + onward_a == 0) {
            continue; // dead end: restart from the same edge type
        }
        within = std::uniform_int_distribution<std::int64_t>(0, onward_w + onward_a - 1)(gen) < onward_w;
        within_steps += within ? 1 : 0;
        ++taken;
    }
    const double simulated = static_cast<double>(within_steps) / steps;
    CHECK(std::abs(within_block_reach_probability(pw, pa) - simulated) <= 0.005);
}

TEST_CASE("SBM supernode laws") {
    testing::QuietWarnings quiet;
    const Pmf pw = binomial_pmf(171, 0.08323);
    const Pmf pa = binomial_pmf(22188, 0.00004718);

    const auto rnd = supernode_pmfs_sbm(SamplingMethod::random, pw, Pmf::point_mass(0), 50);
    CHECK(rnd.across.is_point_mass());
    CHECK(rnd.across.min_degree() == 0);
    CHECK(mean(rnd.within) == doctest::Approx(50 * mean(pw)).epsilon(1e-9));

    // Degrees of at least 2 keep both constructions clear of the degree-0 clamp,
    // which one applies per node and the other to the sum.
    const Pmf no_clamp = Pmf::from_weights(2, {0.2, 0.3, 0.1, 0.4});
    const auto snow = supernode_pmfs_sbm(SamplingMethod::snowball, no_clamp, Pmf::point_mass(0), 50);
    const Pmf direct = supernode_pmf_snowball(no_clamp, 50);
    REQUIRE(snow.within.min_degree() == direct.min_degree());
    REQUIRE(snow.within.size() == direct.size());
    for (std::int64_t k = direct.min_degree(); k <= direct.max_degree(); ++k) {
        CHECK(std::abs(snow.within(k) - direct(k)) <= 1e-12);
    }
    CHECK(snow.across.min_degree() == 0);

    // Per node, the within-block mean is P(W)(c'_w - 2) + (1 - P(W)) c_w. The
    // across side clamps mass, so its mean is at least the unclamped value.
    const double reach = within_block_reach_probability(pw, pa);
    const auto full = supernode_pmfs_sbm(SamplingMethod::snowball, pw, pa, 200);
    const double within_mean = reach * (mean(degree_weighted(pw)) - 2.0) + (1.0 - reach) * mean(pw);
    CHECK(mean(full.within) == doctest::Approx(200 * within_mean).epsilon(1e-6));
    const double across_unclamped = (1.0 - reach) * (mean(degree_weighted(pa)) - 2.0) + reach * mean(pa);
    CHECK(mean(full.across) >= 200 * across_unclamped - 1e-6);
}

TEST_CASE("SBM snowball supernode mean against contracted samples" * doctest::may_fail()) {
    // The mixture construction is taken as given; on the reference SBM it
    // overstates the supernode degree because snowball samples saturate a
    // block and many of their edges stay inside the sample.
    testing::QuietWarnings quiet;
    const SbmSpec spec{130, 172, 0.08323, 0.00004718};
    const auto laws = std::get<BlockDegrees>(degree_distributions(spec));
    const auto sn = supernode_pmfs_sbm(SamplingMethod::snowball, laws.within, laws.across, 200);
    const double estimated = mean(sn.within) + mean(sn.across);
    double cut = 0.0;
    int trials = 0;
    for (int gi = 0; gi < 5; ++gi) {
        const Graph g = generate(spec, mix_seed(13, gi));
        for (int j = 0; j < 20; ++j) {
            const auto r = draw_snowball_sample(g, 200, 0.5, mix_seed(mix_seed(13, gi), j + 1));
            std::vector<char> inside(static_cast<std::size_t>(g.node_count()), 0);
            for (NodeId v : r.nodes) {
                inside[v] = 1;
            }
            for (NodeId v : r.nodes) {
                for (NodeId u : g.neighbors(v)) {
                    cut += inside[u] ? 0.0 : 1.0;
                }
            }
            ++trials;
        }
    }
    const double observed = cut / trials;
    MESSAGE("estimated supernode degree " << estimated << ", observed cut edges " << observed);
    CHECK(estimated == doctest::Approx(observed).epsilon(0.05));
}

} // TEST_SUITE
