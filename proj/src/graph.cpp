#include "dspd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "dspd/error.hpp"
#include "dspd/log.hpp"
#include "dspd/rng.hpp"

namespace dspd {

namespace {

constexpr int kMaxDegreeRedraws = 100;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0, 1]");
    }
}

void check_node_count(std::int64_t n) {
    if (n < 2) {
        throw ParameterError("graph needs at least 2 nodes, got " + std::to_string(n));
    }
    if (n > static_cast<std::int64_t>(UINT32_MAX)) {
        throw ParameterError("graph too large for 32-bit node ids");
    }
}

// Geometric gap to the next present pair when each is present with
// probability p (log_q = log(1 - p)).
std::uint64_t skip(Rng& rng, double log_q) {
    const double r = rng.uniform01();
    return static_cast<std::uint64_t>(std::min(std::floor(std::log1p(-r) / log_q), 1e18));
}

// Independent edges among the nodes [base, base + count).
void gnp_block(Rng& rng, NodeId base, std::int64_t count, double p, std::vector<std::pair<NodeId, NodeId>>& edges) {
    if (p <= 0.0 || count < 2) {
        return;
    }
    if (p >= 1.0) {
        for (std::int64_t v = 1; v < count; ++v) {
            for (std::int64_t w = 0; w < v; ++w) {
                edges.emplace_back(base + static_cast<NodeId>(w), base + static_cast<NodeId>(v));
            }
        }
        return;
    }
    const double log_q = std::log1p(-p);
    std::int64_t v = 1;
    std::int64_t w = -1;
    while (v < count) {
        w += 1 + static_cast<std::int64_t>(skip(rng, log_q));
        while (w >= v && v < count) {
            w -= v;
            ++v;
        }
        if (v < count) {
            edges.emplace_back(base + static_cast<NodeId>(w), base + static_cast<NodeId>(v));
        }
    }
}

// Independent edges between [a, a + count) and [b, b + count).
void gnp_bipartite(Rng& rng, NodeId a, NodeId b, std::int64_t count, double p,
                   std::vector<std::pair<NodeId, NodeId>>& edges) {
    if (p <= 0.0) {
        return;
    }
    const auto total = static_cast<std::uint64_t>(count) * static_cast<std::uint64_t>(count);
    if (p >= 1.0) {
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            edges.emplace_back(a + static_cast<NodeId>(idx / count), b + static_cast<NodeId>(idx % count));
        }
        return;
    }
    const double log_q = std::log1p(-p);
    for (std::uint64_t idx = skip(rng, log_q); idx < total; idx += 1 + skip(rng, log_q)) {
        edges.emplace_back(a + static_cast<NodeId>(idx / count), b + static_cast<NodeId>(idx % count));
    }
}

// Inverse-CDF draw from a pmf.
std::int64_t draw(Rng& rng, const Pmf& p, std::span<const double> cumulative) {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto idx = std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(cumulative.size()) - 1);
    return p.min_degree() + idx;
}

} // namespace

void validate(const GraphSpec& spec) {
    std::visit(Overloaded{
                   [](const BinomialSpec& s) {
                       check_node_count(s.n);
                       check_probability(s.p, "p");
                   },
                   [](const PowerLawSpec& s) {
                       check_node_count(s.n);
                       if (!(std::isfinite(s.gamma) && s.gamma >= 0.0)) {
                           throw ParameterError("gamma must be finite and non-negative");
                       }
                       if (s.k_min < 1 || s.k_min > s.k_max || s.k_max >= s.n) {
                           throw ParameterError("power law needs 1 <= k_min <= k_max < N");
                       }
                   },
                   [](const SbmSpec& s) {
                       if (s.blocks < 1 || s.block_size < 1) {
                           throw ParameterError("SBM needs positive block count and block size");
                       }
                       check_node_count(s.blocks * s.block_size);
                       check_probability(s.p1, "p1");
                       check_probability(s.p2, "p2");
                       if (s.p1 < s.p2) {
                           log::warn("SBM with p1 < p2: blocks are sparser inside than across");
                       }
                   },
               },
               spec);
}

std::int64_t node_count(const GraphSpec& spec) {
    return std::visit(Overloaded{
                          [](const BinomialSpec& s) { return s.n; },
                          [](const PowerLawSpec& s) { return s.n; },
                          [](const SbmSpec& s) { return s.blocks * s.block_size; },
                      },
                      spec);
}

std::string describe(const GraphSpec& spec) {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const BinomialSpec& s) { os << "binomial(N=" << s.n << ", p=" << s.p << ")"; },
                   [&](const PowerLawSpec& s) {
                       os << "power_law(N=" << s.n << ", gamma=" << s.gamma << ", k=[" << s.k_min << ", " << s.k_max
                          << "])";
                   },
                   [&](const SbmSpec& s) {
                       os << "sbm(B=" << s.blocks << ", N_B=" << s.block_size << ", p1=" << s.p1 << ", p2=" << s.p2
                          << ")";
                   },
               },
               spec);
    return os.str();
}

DegreeDistributions degree_distributions(const GraphSpec& spec, double tail_eps) {
    validate(spec);
    auto binomial_or_empty = [tail_eps](std::int64_t trials, double p) {
        return trials == 0 ? Pmf::point_mass(0) : binomial_pmf(trials, p, tail_eps);
    };
    return std::visit(Overloaded{
                          [&](const BinomialSpec& s) -> DegreeDistributions {
                              return ConfigurationDegrees{binomial_or_empty(s.n - 1, s.p)};
                          },
                          [](const PowerLawSpec& s) -> DegreeDistributions {
                              return ConfigurationDegrees{power_law_pmf(s.gamma, s.k_min, s.k_max)};
                          },
                          [&](const SbmSpec& s) -> DegreeDistributions {
                              return BlockDegrees{binomial_or_empty(s.block_size - 1, s.p1),
                                                  binomial_or_empty((s.blocks - 1) * s.block_size, s.p2)};
                          },
                      },
                      spec);
}

Graph Graph::from_edges(std::int64_t node_count, std::span<const std::pair<NodeId, NodeId>> edges) {
    if (node_count < 0 || node_count > static_cast<std::int64_t>(UINT32_MAX)) {
        throw ParameterError("invalid node count " + std::to_string(node_count));
    }
    const auto n = static_cast<std::size_t>(node_count);
    std::vector<std::uint64_t> degree(n + 1, 0);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) {
            throw ParameterError("edge endpoint out of range");
        }
        if (u != v) {
            ++degree[u];
            ++degree[v];
        }
    }
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    }
    std::vector<NodeId> raw(g.offsets_[n]);
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        if (u != v) {
            raw[cursor[u]++] = v;
            raw[cursor[v]++] = u;
        }
    }
    // Sort and deduplicate each list, compacting in place.
    std::vector<std::uint64_t> offsets(n + 1, 0);
    std::uint64_t out = 0;
    for (std::size_t v = 0; v < n; ++v) {
        auto first = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        last = std::unique(first, last);
        for (auto it = first; it != last; ++it) {
            raw[out++] = *it;
        }
        offsets[v + 1] = out;
    }
    raw.resize(out);
    raw.shrink_to_fit();
    g.offsets_ = std::move(offsets);
    g.neighbors_ = std::move(raw);
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::int64_t> power_law_degree_sequence(const PowerLawSpec& spec, std::uint64_t seed) {
    validate(spec);
    const Pmf law = power_law_pmf(spec.gamma, spec.k_min, spec.k_max);
    std::vector<double> cumulative;
    double acc = 0.0;
    for (double v : law.probs()) {
        cumulative.push_back(acc += v);
    }
    Rng rng(mix_seed(seed, 1));
    std::vector<std::int64_t> degrees(static_cast<std::size_t>(spec.n));
    for (int attempt = 0; attempt < kMaxDegreeRedraws; ++attempt) {
        std::int64_t total = 0;
        for (auto& d : degrees) {
            d = draw(rng, law, cumulative);
            total += d;
        }
        if (total % 2 == 0) {
            return degrees;
        }
    }
    throw GenerationError("no even-sum degree sequence after " + std::to_string(kMaxDegreeRedraws) + " draws");
}

Graph configuration_model(std::span<const std::int64_t> degrees, std::uint64_t seed) {
    std::vector<NodeId> stubs;
    std::int64_t total = 0;
    for (auto d : degrees) {
        if (d < 0) {
            throw ParameterError("negative degree in sequence");
        }
        total += d;
    }
    if (total % 2 != 0) {
        throw GenerationError("degree sequence has an odd sum");
    }
    stubs.reserve(static_cast<std::size_t>(total));
    for (std::size_t v = 0; v < degrees.size(); ++v) {
        stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[v]), static_cast<NodeId>(v));
    }
    Rng rng(seed);
    for (std::size_t i = stubs.size(); i > 1; --i) {
        std::swap(stubs[i - 1], stubs[rng.below(i)]);
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        edges.emplace_back(stubs[i], stubs[i + 1]);
    }
    return Graph::from_edges(static_cast<std::int64_t>(degrees.size()), edges);
}

Graph generate(const GraphSpec& spec, std::uint64_t seed) {
    validate(spec);
    return std::visit(Overloaded{
                          [&](const BinomialSpec& s) {
                              Rng rng(seed);
                              std::vector<std::pair<NodeId, NodeId>> edges;
                              edges.reserve(static_cast<std::size_t>(0.5 * s.p * s.n * (s.n - 1) * 1.01 + 16));
                              gnp_block(rng, 0, s.n, s.p, edges);
                              return Graph::from_edges(s.n, edges);
                          },
                          [&](const PowerLawSpec& s) {
                              const auto degrees = power_law_degree_sequence(s, seed);
                              return configuration_model(degrees, mix_seed(seed, 2));
                          },
                          [&](const SbmSpec& s) {
                              Rng rng(seed);
                              std::vector<std::pair<NodeId, NodeId>> edges;
                              const auto nb = static_cast<NodeId>(s.block_size);
                              for (std::int64_t a = 0; a < s.blocks; ++a) {
                                  gnp_block(rng, static_cast<NodeId>(a) * nb, s.block_size, s.p1, edges);
                                  for (std::int64_t b = a + 1; b < s.blocks; ++b) {
                                      gnp_bipartite(rng, static_cast<NodeId>(a) * nb, static_cast<NodeId>(b) * nb,
                                                    s.block_size, s.p2, edges);
                                  }
                              }
                              return Graph::from_edges(s.blocks * s.block_size, edges);
                          },
                      },
                      spec);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (std::int64_t u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
            if (static_cast<std::int64_t>(v) > u) {
                out << u << ' ' << v << '\n';
            }
        }
    }
}

Graph read_edge_list(std::istream& in) {
    std::int64_t n = 0;
    std::int64_t m = 0;
    if (!(in >> n >> m) || n < 0 || m < 0) {
        throw ParameterError("edge list: malformed header");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        std::int64_t u = 0;
        std::int64_t v = 0;
        if (!(in >> u >> v) || u < 0 || v < 0 || u >= n || v >= n) {
            throw ParameterError("edge list: malformed edge on line " + std::to_string(i + 2));
        }
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return Graph::from_edges(n, edges);
}

} // namespace dspd
