#pragma once

// Reference implementations used only by the tests. They favor directness over
// speed and share no code paths with the library beyond the public types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "dspd/distance_distribution.hpp"
#include "dspd/graph.hpp"
#include "dspd/pmf.hpp"

namespace oracle {

using Dense = std::map<std::int64_t, double>;

inline Dense to_dense(const dspd::Pmf& p) {
    Dense out;
    for (std::int64_t k = p.min_degree(); k <= p.max_degree(); ++k) {
        out[k] = p(k);
    }
    return out;
}

/// Binomial probabilities from the closed form in extended-precision log space.
inline double binomial_prob(std::int64_t n, double p, std::int64_t k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    using L = long double;
    const L lg = std::lgamma(L(n) + 1) - std::lgamma(L(k) + 1) - std::lgamma(L(n - k) + 1);
    return static_cast<double>(std::exp(lg + L(k) * std::log(L(p)) + L(n - k) * std::log1p(-L(p))));
}

inline Dense convolve(const Dense& a, const Dense& b) {
    Dense out;
    for (auto [i, pi] : a) {
        for (auto [j, pj] : b) {
            out[i + j] += pi * pj;
        }
    }
    return out;
}

/// s-fold convolution by s - 1 successive products, no truncation.
inline Dense convolution_power(const Dense& p, int s) {
    Dense out = p;
    for (int i = 1; i < s; ++i) {
        out = convolve(out, p);
    }
    return out;
}

inline double sum_values(const Dense& d) {
    double acc = 0.0;
    for (auto [k, v] : d) {
        acc += v;
    }
    return acc;
}

/// Exact optimal transport cost between two distributions on integer points
/// with cost |i - j|, by successive shortest augmenting paths on the
/// bipartite supply/demand network (Bellman-Ford, so negative residual costs
/// are handled). Inputs need not be sorted or share support.
inline double transport_cost(const Dense& supply, const Dense& demand) {
    std::vector<std::int64_t> xs;
    std::vector<double> sup;
    for (auto [k, v] : supply) {
        xs.push_back(k);
        sup.push_back(v);
    }
    std::vector<std::int64_t> ys;
    std::vector<double> dem;
    for (auto [k, v] : demand) {
        ys.push_back(k);
        dem.push_back(v);
    }
    const int a = static_cast<int>(xs.size());
    const int b = static_cast<int>(ys.size());
    // Nodes: 0 source, 1..a supply, a+1..a+b demand, a+b+1 sink.
    const int n = a + b + 2;
    const int source = 0;
    const int sink = n - 1;
    struct Edge {
        int to;
        double cap;
        double cost;
        int rev;
    };
    std::vector<std::vector<Edge>> adj(static_cast<std::size_t>(n));
    auto add = [&](int u, int v, double cap, double cost) {
        adj[u].push_back({v, cap, cost, static_cast<int>(adj[v].size())});
        adj[v].push_back({u, 0.0, -cost, static_cast<int>(adj[u].size()) - 1});
    };
    for (int i = 0; i < a; ++i) {
        add(source, 1 + i, sup[i], 0.0);
    }
    for (int j = 0; j < b; ++j) {
        add(1 + a + j, sink, dem[j], 0.0);
    }
    for (int i = 0; i < a; ++i) {
        for (int j = 0; j < b; ++j) {
            add(1 + i, 1 + a + j, std::numeric_limits<double>::infinity(),
                static_cast<double>(std::abs(xs[i] - ys[j])));
        }
    }
    constexpr double tiny = 1e-15;
    double total_cost = 0.0;
    while (true) {
        std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
        std::vector<int> prev_node(static_cast<std::size_t>(n), -1);
        std::vector<int> prev_edge(static_cast<std::size_t>(n), -1);
        dist[source] = 0.0;
        for (int round = 0; round < n; ++round) {
            bool changed = false;
            for (int u = 0; u < n; ++u) {
                if (!std::isfinite(dist[u])) {
                    continue;
                }
                for (std::size_t e = 0; e < adj[u].size(); ++e) {
                    const Edge& ed = adj[u][e];
                    if (ed.cap > tiny && dist[u] + ed.cost < dist[ed.to] - 1e-12) {
                        dist[ed.to] = dist[u] + ed.cost;
                        prev_node[ed.to] = u;
                        prev_edge[ed.to] = static_cast<int>(e);
                        changed = true;
                    }
                }
            }
            if (!changed) {
                break;
            }
        }
        if (!std::isfinite(dist[sink])) {
            break;
        }
        double push = std::numeric_limits<double>::infinity();
        for (int v = sink; v != source; v = prev_node[v]) {
            push = std::min(push, adj[prev_node[v]][prev_edge[v]].cap);
        }
        for (int v = sink; v != source; v = prev_node[v]) {
            Edge& ed = adj[prev_node[v]][prev_edge[v]];
            ed.cap -= push;
            adj[v][ed.rev].cap += push;
        }
        total_cost += push * dist[sink];
    }
    return total_cost;
}

/// Distance from the nearest of `sources` to every node, by one plain BFS per
/// source and a pointwise minimum. -1 when unreachable.
inline std::vector<std::int32_t> per_source_bfs(const dspd::Graph& g, const std::vector<dspd::NodeId>& sources) {
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<std::int32_t> best(n, -1);
    for (dspd::NodeId s : sources) {
        std::vector<std::int32_t> d(n, -1);
        std::deque<dspd::NodeId> q{s};
        d[s] = 0;
        while (!q.empty()) {
            const auto v = q.front();
            q.pop_front();
            for (auto u : g.neighbors(v)) {
                if (d[u] < 0) {
                    d[u] = d[v] + 1;
                    q.push_back(u);
                }
            }
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (d[v] >= 0 && (best[v] < 0 || d[v] < best[v])) {
                best[v] = d[v];
            }
        }
    }
    return best;
}

/// Two-sample Kolmogorov-Smirnov statistic between integer draws and a pmf.
inline double ks_statistic(std::vector<std::int64_t> draws, const dspd::Pmf& p) {
    std::sort(draws.begin(), draws.end());
    const double n = static_cast<double>(draws.size());
    const std::int64_t lo = std::min(draws.front(), p.min_degree());
    const std::int64_t hi = std::max(draws.back(), p.max_degree());
    double worst = 0.0;
    double model = 0.0;
    std::size_t i = 0;
    for (std::int64_t k = lo; k <= hi; ++k) {
        model += p(k);
        while (i < draws.size() && draws[i] <= k) {
            ++i;
        }
        worst = std::max(worst, std::abs(static_cast<double>(i) / n - model));
    }
    return worst;
}

/// Inverse-CDF sampler over a pmf's support, driven by a std engine so it
/// shares nothing with the library RNG.
class PmfSampler {
public:
    explicit PmfSampler(const dspd::Pmf& p) : lo_(p.min_degree()) {
        double acc = 0.0;
        for (double v : p.probs()) {
            acc += v;
            cum_.push_back(acc);
        }
        cum_.back() = 1.0;
    }
    std::int64_t operator()(std::mt19937_64& gen) {
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
        return lo_ + (std::upper_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
    }

private:
    std::int64_t lo_;
    std::vector<double> cum_;
};

} // namespace oracle
