#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dspd {

/**
 * Distribution of the distance from a non-sampled node to the sample.
 *
 * survival[l] = P(d > l) for l = 0..L. Mass beyond L is `residual`, which is
 * survival[L] and is read as "unreachable" once the values have converged.
 */
struct DistanceDistribution {
    std::vector<double> survival{1.0};
    double residual = 1.0;

    /// Builds the distribution from survival values; residual is the last one.
    static DistanceDistribution from_survival(std::vector<double> survival);

    /// Builds the distribution from P(d = l), l = 0..L, and the unreachable mass.
    static DistanceDistribution from_pmf(std::span<const double> pmf, double residual);

    /// counts[l] nodes at distance l, plus `unreachable` nodes at infinity.
    static DistanceDistribution from_histogram(std::span<const std::int64_t> counts, std::int64_t unreachable);

    std::int64_t max_distance() const { return static_cast<std::int64_t>(survival.size()) - 1; }

    /// P(d = l) for l = 0..L; entry 0 is 1 - survival[0].
    std::vector<double> pmf() const;

    /// Total finite-distance mass, 1 - residual.
    double reachable_mass() const { return 1.0 - residual; }
};

} // namespace dspd
