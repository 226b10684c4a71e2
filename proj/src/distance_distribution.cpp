#include "dspd/distance_distribution.hpp"

#include <algorithm>

#include "dspd/error.hpp"

namespace dspd {

DistanceDistribution DistanceDistribution::from_survival(std::vector<double> survival) {
    if (survival.empty()) {
        throw ParameterError("survival sequence must be non-empty");
    }
    DistanceDistribution d;
    d.residual = survival.back();
    d.survival = std::move(survival);
    return d;
}

DistanceDistribution DistanceDistribution::from_pmf(std::span<const double> pmf, double residual) {
    if (pmf.empty()) {
        throw ParameterError("distance pmf must be non-empty");
    }
    // Accumulate from the far end so that small tails are not swamped.
    std::vector<double> survival(pmf.size());
    double tail = residual;
    for (std::size_t l = pmf.size(); l-- > 0;) {
        survival[l] = std::clamp(tail, 0.0, 1.0);
        tail += pmf[l];
    }
    DistanceDistribution d;
    d.survival = std::move(survival);
    d.residual = residual;
    return d;
}

DistanceDistribution DistanceDistribution::from_histogram(std::span<const std::int64_t> counts,
                                                          std::int64_t unreachable) {
    std::int64_t total = unreachable;
    for (auto c : counts) {
        total += c;
    }
    if (total <= 0) {
        throw ParameterError("distance histogram is empty");
    }
    std::vector<double> survival(std::max<std::size_t>(counts.size(), 1));
    std::int64_t beyond = unreachable;
    for (std::size_t l = survival.size(); l-- > 0;) {
        survival[l] = static_cast<double>(beyond) / static_cast<double>(total);
        if (l < counts.size()) {
            beyond += counts[l];
        }
    }
    DistanceDistribution d;
    d.residual = static_cast<double>(unreachable) / static_cast<double>(total);
    d.survival = std::move(survival);
    return d;
}

std::vector<double> DistanceDistribution::pmf() const {
    std::vector<double> out(survival.size());
    double prev = 1.0;
    for (std::size_t l = 0; l < survival.size(); ++l) {
        out[l] = prev - survival[l];
        prev = survival[l];
    }
    return out;
}

} // namespace dspd
