#include "dspd/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dspd/error.hpp"

namespace dspd {

namespace {

constexpr double kMinReachable = 1e-15;

double checked_reachable(const DistanceDistribution& a) {
    const double r = a.reachable_mass();
    if (!(r > kMinReachable)) {
        throw DomainError("distance distribution has no finite-distance mass");
    }
    return r;
}

} // namespace

double wasserstein1(const DistanceDistribution& a, const DistanceDistribution& b) {
    const double ra = checked_reachable(a);
    const double rb = checked_reachable(b);
    const auto pa = a.pmf();
    const auto pb = b.pmf();
    const std::size_t len = std::max(pa.size(), pb.size());
    double cdf_a = 0.0;
    double cdf_b = 0.0;
    double total = 0.0;
    // The last CDF values are both 1, so the final term is zero.
    for (std::size_t l = 0; l + 1 < len; ++l) {
        if (l < pa.size()) {
            cdf_a += pa[l] / ra;
        }
        if (l < pb.size()) {
            cdf_b += pb[l] / rb;
        }
        total += std::abs(std::min(cdf_a, 1.0) - std::min(cdf_b, 1.0));
    }
    return total;
}

double mean_distance(const DistanceDistribution& a) {
    const double r = checked_reachable(a);
    const auto p = a.pmf();
    double acc = 0.0;
    for (std::size_t l = 0; l < p.size(); ++l) {
        acc += static_cast<double>(l) * p[l];
    }
    return acc / r;
}

MethodComparison compare_methods(const DistanceDistribution& first, const DistanceDistribution& second) {
    MethodComparison out;
    out.difference = mean_distance(first) - mean_distance(second);
    if (out.difference < 0.0) {
        out.smaller_mean = Preference::first;
    } else if (out.difference > 0.0) {
        out.smaller_mean = Preference::second;
    }
    return out;
}

} // namespace dspd
