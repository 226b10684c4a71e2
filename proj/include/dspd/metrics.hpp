#pragma once

#include "dspd/distance_distribution.hpp"

namespace dspd {

/// Discrete Wasserstein-1 distance between the reachability-conditioned
/// distributions: sum over l of |CDF_a(l) - CDF_b(l)|. Throws DomainError if
/// either side has no finite-distance mass.
double wasserstein1(const DistanceDistribution& a, const DistanceDistribution& b);

/// Mean finite distance, conditioned on reachability.
double mean_distance(const DistanceDistribution& a);

enum class Preference { first, second, tie };

struct MethodComparison {
    Preference smaller_mean = Preference::tie;
    double difference = 0.0; ///< mean(first) - mean(second)
};

/// Which of two distributions has the smaller mean distance.
MethodComparison compare_methods(const DistanceDistribution& first, const DistanceDistribution& second);

} // namespace dspd
