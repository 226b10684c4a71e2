#include "dspd/oracle.hpp"

#include <algorithm>

#include "dspd/error.hpp"

namespace dspd {

std::vector<std::int32_t> multi_source_bfs(const Graph& g, std::span<const NodeId> sources) {
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<std::int32_t> dist(n, kUnreachable);
    std::vector<NodeId> queue;
    queue.reserve(n);
    for (NodeId s : sources) {
        if (s >= n) {
            throw ParameterError("BFS source is not a node of the graph");
        }
        if (dist[s] == kUnreachable) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    // Queue order has no memory locality on random graphs, so the adjacency
    // rows a few entries ahead are prefetched along with their distance entries.
    constexpr std::size_t kAhead = 8;
    const auto offsets = g.offsets();
    const auto adjacency = g.adjacency();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        if (head + 2 * kAhead < queue.size()) {
            __builtin_prefetch(&offsets[queue[head + 2 * kAhead]]);
        }
        if (head + kAhead < queue.size()) {
            const NodeId w = queue[head + kAhead];
            __builtin_prefetch(adjacency.data() + offsets[w]);
        }
        if (head + kAhead / 2 < queue.size()) {
            for (NodeId v : g.neighbors(queue[head + kAhead / 2])) {
                __builtin_prefetch(&dist[v]);
            }
        }
        const NodeId u = queue[head];
        const std::int32_t next = dist[u] + 1;
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] == kUnreachable) {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

DistanceDistribution bfs_dspd(const Graph& g, const SampleResult& sample) {
    if (sample.nodes.empty()) {
        throw ParameterError("bfs_dspd needs a non-empty sample");
    }
    const auto dist = multi_source_bfs(g, sample.nodes);
    std::vector<std::int64_t> counts(1, 0);
    std::int64_t unreachable = 0;
    for (std::int32_t d : dist) {
        if (d == kUnreachable) {
            ++unreachable;
        } else if (d > 0) {
            if (static_cast<std::size_t>(d) >= counts.size()) {
                counts.resize(static_cast<std::size_t>(d) + 1, 0);
            }
            ++counts[static_cast<std::size_t>(d)];
        }
    }
    return DistanceDistribution::from_histogram(counts, unreachable);
}

DistanceDistribution average_dspd(std::span<const DistanceDistribution> trials) {
    if (trials.empty()) {
        throw ParameterError("average_dspd needs at least one trial");
    }
    std::size_t longest = 0;
    for (const auto& t : trials) {
        longest = std::max(longest, t.survival.size());
    }
    std::vector<double> pmf(longest, 0.0);
    double residual = 0.0;
    for (const auto& t : trials) {
        const auto p = t.pmf();
        for (std::size_t l = 0; l < p.size(); ++l) {
            pmf[l] += p[l];
        }
        residual += t.residual;
    }
    const double k = static_cast<double>(trials.size());
    for (double& v : pmf) {
        v /= k;
    }
    return DistanceDistribution::from_pmf(pmf, residual / k);
}

} // namespace dspd
