#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dspd/distance_distribution.hpp"
#include "dspd/graph.hpp"
#include "dspd/log.hpp"
#include "dspd/pmf.hpp"

namespace testing {

inline constexpr int kPropertyCases = 1000;

/// Random pmf with support starting in [0, max_min] and up to max_len
/// entries, interior zeros allowed.
inline dspd::Pmf random_pmf(std::mt19937_64& gen, int max_min = 5, int max_len = 8) {
    std::uniform_int_distribution<int> lo(0, max_min);
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    std::bernoulli_distribution zero(0.2);
    const int n = len(gen);
    std::vector<double> weights(static_cast<std::size_t>(n));
    for (double& x : weights) {
        x = zero(gen) ? 0.0 : w(gen);
    }
    weights.front() = 0.05 + w(gen);
    return dspd::Pmf::from_weights(lo(gen), weights);
}

/// Random distance distribution with support 1..max_len and optional residual.
inline dspd::DistanceDistribution random_distribution(std::mt19937_64& gen, int max_len = 8,
                                                      bool with_residual = false) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    const int n = len(gen);
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    double total = 0.0;
    for (int l = 1; l <= n; ++l) {
        pmf[static_cast<std::size_t>(l)] = w(gen);
        total += pmf[static_cast<std::size_t>(l)];
    }
    pmf[1] += 0.01;
    total += 0.01;
    const double residual = with_residual ? 0.5 * w(gen) : 0.0;
    for (double& x : pmf) {
        x = x / total * (1.0 - residual);
    }
    return dspd::DistanceDistribution::from_pmf(pmf, residual);
}

/// Erdos-Renyi style graph for small-scale property checks.
inline dspd::Graph random_graph(std::mt19937_64& gen, int max_nodes = 60) {
    std::uniform_int_distribution<int> nodes(2, max_nodes);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = nodes(gen);
    const double p = u(gen) * 6.0 / n;
    std::vector<std::pair<dspd::NodeId, dspd::NodeId>> edges;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (u(gen) < p) {
                edges.emplace_back(a, b);
            }
        }
    }
    return dspd::Graph::from_edges(n, edges);
}

/// Silences library warnings for the lifetime of the object.
class QuietWarnings {
public:
    QuietWarnings() : previous_(dspd::log::set_warning_sink({})) {}
    ~QuietWarnings() { dspd::log::set_warning_sink(previous_); }
    QuietWarnings(const QuietWarnings&) = delete;
    QuietWarnings& operator=(const QuietWarnings&) = delete;

private:
    dspd::log::Sink previous_;
};

} // namespace testing
