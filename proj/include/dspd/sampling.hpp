#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dspd/graph.hpp"
#include "dspd/pmf.hpp"

namespace dspd {

enum class SamplingMethod { random, snowball };

std::string to_string(SamplingMethod method);
SamplingMethod parse_sampling_method(const std::string& text);

struct SampleSpec {
    SamplingMethod method = SamplingMethod::random;
    std::int64_t size = 1;
    double retention = 0.5; ///< acceptance probability for snowball candidates
};

void validate(const SampleSpec& spec);

/// A concrete sample. `nodes` is in the order nodes joined the sample;
/// `seed_nodes` are those that did not arrive through a sampled neighbor.
struct SampleResult {
    std::vector<NodeId> nodes;
    std::vector<NodeId> seed_nodes;
};

/// s distinct nodes uniformly without replacement; all are seeds.
SampleResult draw_random_sample(const Graph& g, std::int64_t s, std::uint64_t seed);

/**
 * Snowball sample of size s.
 *
 * Candidates are taken from a FIFO frontier of neighbors of sampled nodes and
 * accepted with probability `retention`; a rejected candidate is never
 * reconsidered. When the frontier empties, a fresh seed is drawn uniformly
 * from the undecided nodes (or `first_seed` on the very first draw, if given).
 * Throws ExhaustionError if every node is decided before the sample is full.
 */
SampleResult draw_snowball_sample(const Graph& g, std::int64_t s, double retention, std::uint64_t seed,
                                  std::optional<NodeId> first_seed = std::nullopt);

SampleResult draw_sample(const Graph& g, const SampleSpec& spec, std::uint64_t seed);

/// Supernode degree law under random sampling: the s-fold convolution of p.
Pmf supernode_pmf_random(const Pmf& p, std::int64_t s, double tail_eps = kDefaultTailEps);

/// Supernode degree law under snowball sampling: every sampled node is taken
/// to have been reached along an edge, so degrees are size-biased and each node
/// loses the two stub ends of its arrival edge. Mass pushed below degree 0 is
/// clamped to 0 with a warning.
Pmf supernode_pmf_snowball(const Pmf& p, std::int64_t s, double tail_eps = kDefaultTailEps);

/// Conditional edge-type probabilities of one snowball step in an SBM.
struct ReachTransition {
    double within_given_within = 0.0; ///< P(W | W_P)
    double within_given_across = 0.0; ///< P(W | A_P)
};

ReachTransition reach_transition(const Pmf& p_w, const Pmf& p_a);

/// Stationary probability P(W) that a snowball-traversed edge is within-block.
double within_block_reach_probability(const Pmf& p_w, const Pmf& p_a);

struct BlockSupernodePmfs {
    Pmf within;
    Pmf across;
};

BlockSupernodePmfs supernode_pmfs_sbm(SamplingMethod method, const Pmf& p_w, const Pmf& p_a, std::int64_t s,
                                      double tail_eps = kDefaultTailEps);

} // namespace dspd
