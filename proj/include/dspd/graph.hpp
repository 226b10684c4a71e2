#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dspd/pmf.hpp"

namespace dspd {

using NodeId = std::uint32_t;

/// Every pair of nodes joined independently with probability p.
struct BinomialSpec {
    std::int64_t n = 0;
    double p = 0.0;
};

/// Configuration model with iid degrees k^-gamma on [k_min, k_max].
struct PowerLawSpec {
    std::int64_t n = 0;
    double gamma = 0.0;
    std::int64_t k_min = 1;
    std::int64_t k_max = 1;
};

/// Equal-size stochastic block model. Node v lives in block v / block_size.
struct SbmSpec {
    std::int64_t blocks = 0;
    std::int64_t block_size = 0;
    double p1 = 0.0; ///< within-block edge probability
    double p2 = 0.0; ///< across-block edge probability
};

using GraphSpec = std::variant<BinomialSpec, PowerLawSpec, SbmSpec>;

/// Throws ParameterError on malformed graph parameters. Logs a warning for SBMs with p1 < p2.
void validate(const GraphSpec& spec);

std::int64_t node_count(const GraphSpec& spec);

std::string describe(const GraphSpec& spec);

/// Analytical degree laws of a spec: one law for configuration-style graphs,
/// a (within-block, across-block) pair for SBMs.
struct ConfigurationDegrees {
    Pmf degree;
};
struct BlockDegrees {
    Pmf within;
    Pmf across;
};
using DegreeDistributions = std::variant<ConfigurationDegrees, BlockDegrees>;

DegreeDistributions degree_distributions(const GraphSpec& spec, double tail_eps = kDefaultTailEps);

/**
 * Undirected simple graph in compressed sparse row form.
 *
 * Neighbor lists are sorted, symmetric, and free of self-loops and duplicates.
 */
class Graph {
public:
    Graph() = default;

    /// Builds a simple graph; self-loops are dropped and parallel edges merged.
    static Graph from_edges(std::int64_t node_count, std::span<const std::pair<NodeId, NodeId>> edges);

    std::int64_t node_count() const { return static_cast<std::int64_t>(offsets_.size()) - 1; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(neighbors_.size()) / 2; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::int64_t degree(NodeId v) const { return static_cast<std::int64_t>(offsets_[v + 1] - offsets_[v]); }

    std::span<const std::uint64_t> offsets() const { return offsets_; }
    std::span<const NodeId> adjacency() const { return neighbors_; }

    bool has_edge(NodeId u, NodeId v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::uint64_t> offsets_{0};
    std::vector<NodeId> neighbors_;
};

/// Draws a concrete graph. Deterministic in (spec, seed).
Graph generate(const GraphSpec& spec, std::uint64_t seed);

/// The iid degree sequence generate() uses for a power-law spec with this
/// seed, before pairing and simplification. Redrawn until the sum is even.
std::vector<std::int64_t> power_law_degree_sequence(const PowerLawSpec& spec, std::uint64_t seed);

/// Uniform stub matching on a degree sequence with an even sum; self-loops and
/// multi-edges are removed afterwards.
Graph configuration_model(std::span<const std::int64_t> degrees, std::uint64_t seed);

/// "N M" header, then one "u v" line per edge with u < v.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

} // namespace dspd
