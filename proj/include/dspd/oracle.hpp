#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dspd/distance_distribution.hpp"
#include "dspd/graph.hpp"
#include "dspd/sampling.hpp"

namespace dspd {

inline constexpr std::int32_t kUnreachable = -1;

/// Hop distance from the nearest source to every node (kUnreachable if none).
std::vector<std::int32_t> multi_source_bfs(const Graph& g, std::span<const NodeId> sources);

/// Empirical distance distribution of the non-sample nodes to the sample.
/// Sample nodes are excluded; unreachable nodes form the residual.
DistanceDistribution bfs_dspd(const Graph& g, const SampleResult& sample);

/// Pointwise mean of the trial pmfs and residuals.
DistanceDistribution average_dspd(std::span<const DistanceDistribution> trials);

} // namespace dspd
