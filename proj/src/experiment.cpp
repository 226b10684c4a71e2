#include "dspd/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "dspd/error.hpp"
#include "dspd/oracle.hpp"
#include "dspd/rng.hpp"

namespace dspd {

namespace {

using Clock = std::chrono::steady_clock;

struct SizeRow {
    std::int64_t size;
    double binomial_p;
    std::int64_t sbm_blocks;
};

constexpr std::array<SizeRow, 3> kSizes{{
    {20000, 0.0005, 130},
    {40000, 0.00025, 260},
    {100000, 0.0001, 650},
}};

constexpr std::int64_t kSbmBlockSize = 172;
constexpr double kSbmWithin = 0.08323;
constexpr double kSbmAcross = 0.00004718;
constexpr double kSnowballRetention = 0.5;

// Runs fn(i) for i in [0, count) on up to `threads` workers. Rethrows the
// exception of the lowest failing index.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::string trial_context(std::uint64_t graph_seed, std::optional<std::uint64_t> sample_seed) {
    std::ostringstream os;
    os << "graph seed " << graph_seed;
    if (sample_seed) {
        os << ", sample seed " << *sample_seed;
    }
    return os.str();
}

bool same_graph(const GraphSpec& a, const GraphSpec& b) {
    if (a.index() != b.index()) {
        return false;
    }
    if (auto* x = std::get_if<BinomialSpec>(&a)) {
        const auto& y = std::get<BinomialSpec>(b);
        return x->n == y.n && x->p == y.p;
    }
    if (auto* x = std::get_if<PowerLawSpec>(&a)) {
        const auto& y = std::get<PowerLawSpec>(b);
        return x->n == y.n && x->gamma == y.gamma && x->k_min == y.k_min && x->k_max == y.k_max;
    }
    const auto& x = std::get<SbmSpec>(a);
    const auto& y = std::get<SbmSpec>(b);
    return x.blocks == y.blocks && x.block_size == y.block_size && x.p1 == y.p1 && x.p2 == y.p2;
}

TimingStats timing_stats(std::vector<double> seconds) {
    TimingStats t;
    const Summary s = summarize(seconds);
    t.mean = s.mean;
    t.std = s.std;
    std::vector<double> sorted = seconds;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    t.median = n == 0 ? 0.0 : (n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]));
    t.seconds = std::move(seconds);
    return t;
}

} // namespace

void validate(const ExperimentConfig& config) {
    validate(config.graph);
    validate(config.sample);
    if (config.sample.size >= node_count(config.graph)) {
        throw ParameterError("sample size must be below the node count");
    }
    if (config.trials.graphs < 1 || config.trials.samples_per_graph < 1) {
        throw ParameterError("trial counts must be positive");
    }
    if (config.estimator.l_max < 1) {
        throw ParameterError("l_max must be at least 1");
    }
    if (!(config.estimator.conv_eps >= 0.0)) {
        throw ParameterError("conv_eps must be non-negative");
    }
    if (!(config.estimator.tail_eps > 0.0 && config.estimator.tail_eps <= 1e-6)) {
        throw ParameterError("tail_eps must lie in (0, 1e-6]");
    }
}

ExperimentConfig preset_config(std::string_view name) {
    std::istringstream in{std::string(name)};
    std::string type;
    std::string method;
    std::int64_t size = 0;
    std::int64_t s = 0;
    std::string extra;
    if (!(in >> type >> size >> method >> s) || (in >> extra)) {
        throw ParameterError("preset must look like '<bin|pow_a|pow_b|sbm> <size> <rand|snow> <s>', got '" +
                             std::string(name) + "'");
    }
    const auto row = std::find_if(kSizes.begin(), kSizes.end(), [&](const SizeRow& r) { return r.size == size; });
    if (row == kSizes.end()) {
        throw ParameterError("preset graph size must be 20000, 40000 or 100000");
    }
    if (s != 200 && s != 400 && s != 1000) {
        throw ParameterError("preset sample size must be 200, 400 or 1000");
    }
    if (method != "rand" && method != "snow") {
        throw ParameterError("preset sampling method must be 'rand' or 'snow'");
    }

    ExperimentConfig config;
    if (type == "bin") {
        config.graph = BinomialSpec{row->size, row->binomial_p};
    } else if (type == "pow_a") {
        config.graph = PowerLawSpec{row->size, 2.0, 6, 29};
    } else if (type == "pow_b") {
        config.graph = PowerLawSpec{row->size, 3.0, 6, 19};
    } else if (type == "sbm") {
        config.graph = SbmSpec{row->sbm_blocks, kSbmBlockSize, kSbmWithin, kSbmAcross};
    } else {
        throw ParameterError("preset graph type must be bin, pow_a, pow_b or sbm");
    }
    config.sample = SampleSpec{parse_sampling_method(method), s, kSnowballRetention};
    config.preset = type + " " + std::to_string(size) + " " + method + " " + std::to_string(s);
    return config;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const char* type : {"bin", "pow_a", "pow_b", "sbm"}) {
        for (const auto& row : kSizes) {
            for (const char* method : {"rand", "snow"}) {
                for (int s : {200, 400, 1000}) {
                    names.push_back(std::string(type) + " " + std::to_string(row.size) + " " + method + " " +
                                    std::to_string(s));
                }
            }
        }
    }
    return names;
}

unsigned default_threads() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DSPD_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            threads = static_cast<unsigned>(v);
        }
    }
    return threads;
}

DistanceDistribution estimate(const ExperimentConfig& config) {
    validate(config);
    const auto& settings = config.estimator;
    const EstimatorOptions options{settings.l_max, settings.conv_eps};
    const std::int64_t s = config.sample.size;
    const std::int64_t contracted = node_count(config.graph) - s + 1;
    const auto laws = degree_distributions(config.graph, settings.tail_eps);
    if (const auto* single = std::get_if<ConfigurationDegrees>(&laws)) {
        const Pmf supernode = config.sample.method == SamplingMethod::random
                                  ? supernode_pmf_random(single->degree, s, settings.tail_eps)
                                  : supernode_pmf_snowball(single->degree, s, settings.tail_eps);
        return estimate_dspd(single->degree, supernode, contracted, options);
    }
    const auto& blocks = std::get<BlockDegrees>(laws);
    const auto supernode = supernode_pmfs_sbm(config.sample.method, blocks.within, blocks.across, s, settings.tail_eps);
    return estimate_dspd_sbm(blocks.within, blocks.across, supernode.within, supernode.across, contracted, options);
}

Summary summarize(const std::vector<double>& values) {
    Summary s;
    if (values.empty()) {
        return s;
    }
    for (double v : values) {
        s.mean += v;
    }
    s.mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        var += (v - s.mean) * (v - s.mean);
    }
    s.std = std::sqrt(var / static_cast<double>(values.size()));
    return s;
}

EmpiricalResult run_empirical(const ExperimentConfig& config, unsigned threads) {
    validate(config);
    EmpiricalResult result;
    result.estimate = estimate(config);

    const auto graph_count = static_cast<std::size_t>(config.trials.graphs);
    const auto per_graph = static_cast<std::size_t>(config.trials.samples_per_graph);
    std::vector<Graph> graphs(graph_count);
    std::vector<std::uint64_t> graph_seeds(graph_count);
    for (std::size_t g = 0; g < graph_count; ++g) {
        graph_seeds[g] = mix_seed(config.seed, g);
    }
    parallel_for(graph_count, threads, [&](std::size_t g) {
        try {
            graphs[g] = generate(config.graph, graph_seeds[g]);
        } catch (const std::exception& e) {
            throw std::runtime_error("graph generation failed (" + trial_context(graph_seeds[g], std::nullopt) +
                                     "): " + e.what());
        }
    });

    result.trials.resize(graph_count * per_graph);
    parallel_for(result.trials.size(), threads, [&](std::size_t i) {
        TrialOutcome& t = result.trials[i];
        t.graph_index = static_cast<int>(i / per_graph);
        t.sample_index = static_cast<int>(i % per_graph);
        t.graph_seed = graph_seeds[static_cast<std::size_t>(t.graph_index)];
        t.sample_seed = mix_seed(t.graph_seed, static_cast<std::uint64_t>(t.sample_index) + 1);
        try {
            const Graph& g = graphs[static_cast<std::size_t>(t.graph_index)];
            const SampleResult sample = draw_sample(g, config.sample, t.sample_seed);
            const auto start = Clock::now();
            t.distribution = bfs_dspd(g, sample);
            t.bfs_seconds = std::chrono::duration<double>(Clock::now() - start).count();
            t.wasserstein = wasserstein1(t.distribution, result.estimate);
        } catch (const std::exception& e) {
            throw std::runtime_error("empirical trial failed (" + trial_context(t.graph_seed, t.sample_seed) +
                                     "): " + e.what());
        }
    });

    std::vector<DistanceDistribution> dists;
    std::vector<double> w1;
    std::vector<double> seconds;
    for (const auto& t : result.trials) {
        dists.push_back(t.distribution);
        w1.push_back(t.wasserstein);
        seconds.push_back(t.bfs_seconds);
    }
    result.averaged = average_dspd(dists);
    result.wasserstein = summarize(w1);
    result.bfs_seconds = summarize(seconds);
    return result;
}

std::optional<bool> ComparisonResult::agrees() const {
    if (!empirical) {
        return std::nullopt;
    }
    return empirical->smaller_mean == estimated.smaller_mean;
}

ComparisonResult run_compare(const ExperimentConfig& first, const ExperimentConfig& second, bool validate_empirically,
                             unsigned threads) {
    validate(first);
    validate(second);
    if (!same_graph(first.graph, second.graph)) {
        throw ParameterError("compared configs must share the graph model");
    }
    if (first.sample.size != second.sample.size) {
        throw ParameterError("compared configs must share the sample size");
    }
    if (first.sample.method == second.sample.method) {
        throw ParameterError("compared configs must use different sampling methods");
    }
    ComparisonResult out;
    out.estimate_first = estimate(first);
    out.estimate_second = estimate(second);
    out.estimated = compare_methods(out.estimate_first, out.estimate_second);
    if (validate_empirically) {
        out.empirical_first = run_empirical(first, threads);
        out.empirical_second = run_empirical(second, threads);
        out.empirical = compare_methods(out.empirical_first->averaged, out.empirical_second->averaged);
    }
    return out;
}

BenchResult run_bench(const ExperimentConfig& config, int repetitions) {
    if (repetitions < 2) {
        throw ParameterError("bench needs at least 2 repetitions");
    }
    validate(config);
    const std::uint64_t graph_seed = mix_seed(config.seed, 0);
    const Graph g = generate(config.graph, graph_seed);
    const SampleResult sample = draw_sample(g, config.sample, mix_seed(graph_seed, 1));

    std::vector<double> framework;
    std::vector<double> empirical;
    double sink = 0.0;
    // Separate loops, so BFS traffic over a large graph does not evict the
    // estimator's working set between repetitions.
    for (int r = 0; r < repetitions; ++r) {
        const auto start = Clock::now();
        const DistanceDistribution est = estimate(config);
        framework.push_back(std::chrono::duration<double>(Clock::now() - start).count());
        sink += est.residual;
    }
    for (int r = 0; r < repetitions; ++r) {
        const auto start = Clock::now();
        const DistanceDistribution emp = bfs_dspd(g, sample);
        empirical.push_back(std::chrono::duration<double>(Clock::now() - start).count());
        sink += emp.residual;
    }
    if (std::isnan(sink)) {
        throw std::runtime_error("bench produced a NaN distribution");
    }
    BenchResult out;
    out.repetitions = repetitions;
    out.framework = timing_stats(std::move(framework));
    out.empirical = timing_stats(std::move(empirical));
    return out;
}

} // namespace dspd
