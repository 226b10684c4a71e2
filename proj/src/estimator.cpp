#include "dspd/estimator.hpp"

#include <optional>

#include "shell_driver.hpp"

namespace dspd {

ShellRecursion trace_dspd(const Pmf& p, const Pmf& p_sample, std::int64_t n_contracted,
                          const EstimatorOptions& options) {
    // Without edges there is no neighbor side; its value only ever appears
    // raised to the power 0.
    std::optional<Pmf> neighbor;
    if (p.max_degree() > 0) {
        neighbor = degree_weighted(p);
    }
    auto neighbor_side = [&](double t) { return neighbor ? neighbor->generating(t, -1) : 1.0; };

    ShellRecursion trace;
    trace.n_contracted = n_contracted;
    trace.distribution = detail::run_shells<double>(
        n_contracted, options, trace.m,
        [&](std::int64_t n) { return neighbor_side(1.0 - 1.0 / static_cast<double>(n - 1)); },
        [&](double t, std::int64_t) { return neighbor_side(t); },
        [&](double t, std::int64_t) { return p_sample.generating(t); },
        [&](std::int64_t n) { return p_sample.generating(1.0 - 1.0 / static_cast<double>(n - 1)); },
        [&](std::vector<double> chain) { trace.m_tilde.push_back(std::move(chain)); });
    return trace;
}

DistanceDistribution estimate_dspd(const Pmf& p, const Pmf& p_sample, std::int64_t n_contracted,
                                   const EstimatorOptions& options) {
    return trace_dspd(p, p_sample, n_contracted, options).distribution;
}

DistanceDistribution estimate_single_node(const Pmf& p, std::int64_t n, const EstimatorOptions& options) {
    return estimate_dspd(p, p, n, options);
}

} // namespace dspd
