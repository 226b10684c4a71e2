#pragma once

// Level loop shared by the configuration-model and block-model recursions.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dspd/distance_distribution.hpp"
#include "dspd/error.hpp"
#include "dspd/estimator.hpp"

namespace dspd::detail {

inline void check_recursion_inputs(std::int64_t n_contracted, const EstimatorOptions& options) {
    if (n_contracted < 2) {
        throw ParameterError("contracted graph needs at least 2 nodes, got " + std::to_string(n_contracted));
    }
    if (options.l_max < 1) {
        throw ParameterError("l_max must be at least 1");
    }
    if (!(options.conv_eps >= 0.0)) {
        throw ParameterError("conv_eps must be non-negative");
    }
}

/**
 * For each level l = 1..l_max: builds the neighbor-side chain from its base
 * case on n - l + 1 nodes up to depth l - 1 on n - 1 nodes, evaluates the
 * outer conditional probability and multiplies it into the survival product.
 *
 * base(n') -> State        neighbor-side value at depth 1 on n' nodes
 * step(State, n') -> State  one level deeper, on n' nodes (one more than the previous entry)
 * outer(State, n) -> m      supernode-side value given the deepest chain entry
 * outer_base(n) -> m        supernode-side value at l = 1
 * keep(chain)           receives each level's chain (empty at l = 1)
 */
template <class State, class Base, class Step, class Outer, class OuterBase, class Keep>
DistanceDistribution run_shells(std::int64_t n, const EstimatorOptions& options, std::vector<double>& m_values,
                                Base base, Step step, Outer outer, OuterBase outer_base, Keep keep) {
    check_recursion_inputs(n, options);
    std::vector<double> survival{1.0};
    for (int level = 1; level <= options.l_max; ++level) {
        const std::int64_t smallest = n - level + 1;
        if (smallest < 2) {
            throw DepthError("shell " + std::to_string(level) + " needs a chain on " + std::to_string(smallest) +
                             " nodes; contracted graph of " + std::to_string(n) + " nodes is too small");
        }
        double m = 0.0;
        if (level == 1) {
            m = outer_base(n);
            keep(std::vector<State>{});
        } else {
            std::vector<State> chain;
            chain.reserve(static_cast<std::size_t>(level - 1));
            chain.push_back(base(smallest));
            for (int depth = 2; depth < level; ++depth) {
                chain.push_back(step(chain.back(), smallest + depth - 1));
            }
            m = outer(chain.back(), n);
            keep(std::move(chain));
        }
        m = std::clamp(m, 0.0, 1.0);
        m_values.push_back(m);
        const double prev = survival.back();
        survival.push_back(prev * m);
        if (prev - survival.back() < options.conv_eps) {
            break;
        }
    }
    return DistanceDistribution::from_survival(std::move(survival));
}

} // namespace dspd::detail
