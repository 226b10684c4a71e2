#pragma once

#include <cstdint>
#include <vector>

#include "dspd/distance_distribution.hpp"
#include "dspd/pmf.hpp"

namespace dspd {

struct EstimatorOptions {
    int l_max = 64;         ///< deepest shell computed
    double conv_eps = 1e-9; ///< stop once a shell removes less survival mass than this
};

/**
 * Full record of one shell-recursion run on a contracted graph.
 *
 * Level l (1-based) uses m[l-1] = P(d > l | d > l-1) on the contracted graph
 * of n_contracted nodes. That value is the outer generating function of the
 * supernode law evaluated at the conditional probability of the previous
 * shell, which in turn comes from a chain on graphs one node smaller per step:
 * m_tilde[l-1][j] holds the neighbor-side value on n_contracted - l + 1 + j
 * nodes at depth j + 1, so m_tilde[l-1].back() is the value m[l-1] consumes
 * (the chain is empty at l = 1, which uses the base case directly).
 */
struct ShellRecursion {
    std::int64_t n_contracted = 0;
    std::vector<double> m;
    std::vector<std::vector<double>> m_tilde;
    DistanceDistribution distribution;
};

/// Runs the configuration-model shell recursion with outer law p_sample and
/// neighbor law degree_weighted(p). Throws DepthError when a level would need
/// a graph with fewer than 2 nodes beyond the depth.
ShellRecursion trace_dspd(const Pmf& p, const Pmf& p_sample, std::int64_t n_contracted,
                          const EstimatorOptions& options = {});

/// Distance distribution from non-sampled nodes to a supernode of law p_sample.
DistanceDistribution estimate_dspd(const Pmf& p, const Pmf& p_sample, std::int64_t n_contracted,
                                   const EstimatorOptions& options = {});

/// Distance distribution to a single random node of an n-node graph.
DistanceDistribution estimate_single_node(const Pmf& p, std::int64_t n, const EstimatorOptions& options = {});

/// Evaluation scheme for the block-model double sums. `literal` walks every
/// (k_w, k_a) pair with the printed summation bounds; `factored` uses the
/// separability of the summand. Both give the same value.
enum class SbmSummation { factored, literal };

struct SbmShellRecursion {
    std::int64_t n_contracted = 0;
    double c_within = 0.0;
    double c_across = 0.0;
    std::vector<double> m;
    std::vector<std::vector<double>> m_tilde_within;
    std::vector<std::vector<double>> m_tilde_across;
    DistanceDistribution distribution;
};

SbmShellRecursion trace_dspd_sbm(const Pmf& p_w, const Pmf& p_a, const Pmf& p_sample_w, const Pmf& p_sample_a,
                                 std::int64_t n_contracted, const EstimatorOptions& options = {},
                                 SbmSummation summation = SbmSummation::factored);

/// Block-model variant of estimate_dspd tracking within- and across-block edges.
DistanceDistribution estimate_dspd_sbm(const Pmf& p_w, const Pmf& p_a, const Pmf& p_sample_w, const Pmf& p_sample_a,
                                       std::int64_t n_contracted, const EstimatorOptions& options = {},
                                       SbmSummation summation = SbmSummation::factored);

} // namespace dspd
