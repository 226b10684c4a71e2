#include "dspd/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numeric>

#include "dspd/error.hpp"
#include "dspd/log.hpp"
#include "dspd/rng.hpp"

namespace dspd {

namespace {

enum class NodeState : std::uint8_t { undecided, queued, sampled, discarded };

void check_sample_size(const Graph& g, std::int64_t s) {
    if (s < 1) {
        throw ParameterError("sample size must be at least 1");
    }
    if (s >= g.node_count()) {
        throw ParameterError("sample size " + std::to_string(s) + " must be below the node count " +
                             std::to_string(g.node_count()));
    }
}

Pmf shift_down_with_warning(const Pmf& p, std::int64_t by, const char* what) {
    double moved = 0.0;
    Pmf out = shift_clamped(p, -by, &moved);
    if (moved > 0.0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", moved);
        log::warn(std::string(what) + ": clamped " + buf + " of mass below degree 0");
    }
    return out;
}

bool has_edges(const Pmf& p) { return p.max_degree() > 0; }

} // namespace

std::string to_string(SamplingMethod method) {
    return method == SamplingMethod::random ? "random" : "snowball";
}

SamplingMethod parse_sampling_method(const std::string& text) {
    if (text == "random" || text == "rand") {
        return SamplingMethod::random;
    }
    if (text == "snowball" || text == "snow") {
        return SamplingMethod::snowball;
    }
    throw ParameterError("unknown sampling method '" + text + "'");
}

void validate(const SampleSpec& spec) {
    if (spec.size < 1) {
        throw ParameterError("sample size must be at least 1");
    }
    if (spec.method == SamplingMethod::snowball && !(spec.retention > 0.0 && spec.retention <= 1.0)) {
        throw ParameterError("snowball retention must lie in (0, 1]");
    }
}

SampleResult draw_random_sample(const Graph& g, std::int64_t s, std::uint64_t seed) {
    check_sample_size(g, s);
    // Partial Fisher-Yates over the node ids.
    std::vector<NodeId> ids(static_cast<std::size_t>(g.node_count()));
    std::iota(ids.begin(), ids.end(), NodeId{0});
    Rng rng(seed);
    const auto n = ids.size();
    for (std::size_t i = 0; i < static_cast<std::size_t>(s); ++i) {
        std::swap(ids[i], ids[i + rng.below(n - i)]);
    }
    ids.resize(static_cast<std::size_t>(s));
    SampleResult out;
    out.seed_nodes = ids;
    out.nodes = std::move(ids);
    return out;
}

SampleResult draw_snowball_sample(const Graph& g, std::int64_t s, double retention, std::uint64_t seed,
                                  std::optional<NodeId> first_seed) {
    check_sample_size(g, s);
    if (!(retention > 0.0 && retention <= 1.0)) {
        throw ParameterError("snowball retention must lie in (0, 1]");
    }
    const auto n = static_cast<std::size_t>(g.node_count());
    if (first_seed && *first_seed >= n) {
        throw ParameterError("snowball first seed is not a node of the graph");
    }
    std::vector<NodeState> state(n, NodeState::undecided);
    std::size_t decided = 0;
    std::deque<NodeId> frontier;
    SampleResult out;
    out.nodes.reserve(static_cast<std::size_t>(s));
    Rng rng(seed);

    auto accept = [&](NodeId v) {
        state[v] = NodeState::sampled;
        out.nodes.push_back(v);
        for (NodeId u : g.neighbors(v)) {
            if (state[u] == NodeState::undecided) {
                state[u] = NodeState::queued;
                frontier.push_back(u);
            }
        }
    };

    auto fresh_seed = [&]() -> NodeId {
        if (first_seed) {
            const NodeId v = *first_seed;
            first_seed.reset();
            return v;
        }
        if (decided >= n) {
            throw ExhaustionError("snowball sampling exhausted the graph at " + std::to_string(out.nodes.size()) +
                                  " of " + std::to_string(s) + " nodes");
        }
        // Rejection sampling is cheap while most nodes are undecided.
        for (int attempt = 0; attempt < 64; ++attempt) {
            const auto v = static_cast<NodeId>(rng.below(n));
            if (state[v] == NodeState::undecided) {
                return v;
            }
        }
        std::vector<NodeId> open;
        for (std::size_t v = 0; v < n; ++v) {
            if (state[v] == NodeState::undecided) {
                open.push_back(static_cast<NodeId>(v));
            }
        }
        return open[rng.below(open.size())];
    };

    while (static_cast<std::int64_t>(out.nodes.size()) < s) {
        if (frontier.empty()) {
            const NodeId v = fresh_seed();
            ++decided;
            out.seed_nodes.push_back(v);
            accept(v);
            continue;
        }
        const NodeId v = frontier.front();
        frontier.pop_front();
        ++decided;
        if (rng.bernoulli(retention)) {
            accept(v);
        } else {
            state[v] = NodeState::discarded;
        }
    }
    return out;
}

SampleResult draw_sample(const Graph& g, const SampleSpec& spec, std::uint64_t seed) {
    validate(spec);
    return spec.method == SamplingMethod::random ? draw_random_sample(g, spec.size, seed)
                                                 : draw_snowball_sample(g, spec.size, spec.retention, seed);
}

Pmf supernode_pmf_random(const Pmf& p, std::int64_t s, double tail_eps) {
    return convolution_power(p, s, tail_eps);
}

Pmf supernode_pmf_snowball(const Pmf& p, std::int64_t s, double tail_eps) {
    if (s < 1) {
        throw ParameterError("sample size must be at least 1");
    }
    const Pmf summed = convolution_power(degree_weighted(p), s, tail_eps);
    if (summed.max_degree() < 2 * s) {
        throw DegenerateInputError("snowball supernode law has no mass at non-negative degrees");
    }
    return shift_down_with_warning(summed, 2 * s, "snowball supernode degree");
}

ReachTransition reach_transition(const Pmf& p_w, const Pmf& p_a) {
    ReachTransition t;
    const double c_w = mean(p_w);
    const double c_a = mean(p_a);
    for (std::int64_t kw = p_w.min_degree(); kw <= p_w.max_degree(); ++kw) {
        for (std::int64_t ka = p_a.min_degree(); ka <= p_a.max_degree(); ++ka) {
            const std::int64_t onward = kw + ka - 1;
            if (onward <= 0) {
                continue;
            }
            const double joint = p_w(kw) * p_a(ka);
            if (c_w > 0.0) {
                t.within_given_within += kw * joint / c_w * static_cast<double>(kw - 1) / onward;
            }
            if (c_a > 0.0) {
                t.within_given_across += ka * joint / c_a * static_cast<double>(kw) / onward;
            }
        }
    }
    return t;
}

double within_block_reach_probability(const Pmf& p_w, const Pmf& p_a) {
    const bool within = has_edges(p_w);
    const bool across = has_edges(p_a);
    if (!within && !across) {
        throw DegenerateInputError("within_block_reach_probability: graph has no edges");
    }
    if (!across) {
        return 1.0;
    }
    if (!within) {
        return 0.0;
    }
    // P(W) = a P(W) + b (1 - P(W)), solved for P(W).
    const ReachTransition t = reach_transition(p_w, p_a);
    const double denom = 1.0 - t.within_given_within + t.within_given_across;
    return std::clamp(t.within_given_across / denom, 0.0, 1.0);
}

BlockSupernodePmfs supernode_pmfs_sbm(SamplingMethod method, const Pmf& p_w, const Pmf& p_a, std::int64_t s,
                                      double tail_eps) {
    if (s < 1) {
        throw ParameterError("sample size must be at least 1");
    }
    if (method == SamplingMethod::random) {
        return {convolution_power(p_w, s, tail_eps), convolution_power(p_a, s, tail_eps)};
    }
    const double reach_within = within_block_reach_probability(p_w, p_a);
    // A node reached along an edge of one type has the size-biased law for
    // that type, minus the 2 stub ends of the arrival edge; its other type keeps
    // the plain law.
    auto average_node = [](const Pmf& plain, double arrival_weight, const char* what) {
        if (arrival_weight <= 0.0) {
            return plain;
        }
        return mixture(shift_down_with_warning(degree_weighted(plain), 2, what), plain, arrival_weight);
    };
    const Pmf within = average_node(p_w, reach_within, "SBM within-block sampled degree");
    const Pmf across = average_node(p_a, 1.0 - reach_within, "SBM across-block sampled degree");
    return {convolution_power(within, s, tail_eps), convolution_power(across, s, tail_eps)};
}

} // namespace dspd
