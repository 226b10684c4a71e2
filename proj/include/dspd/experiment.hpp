#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dspd/distance_distribution.hpp"
#include "dspd/estimator.hpp"
#include "dspd/graph.hpp"
#include "dspd/metrics.hpp"
#include "dspd/sampling.hpp"

namespace dspd {

struct TrialPlan {
    int graphs = 5;
    int samples_per_graph = 20;
};

struct EstimatorSettings {
    int l_max = 64;
    double conv_eps = 1e-9;
    double tail_eps = kDefaultTailEps;
};

enum class OutputFormat { json, csv };

struct ExperimentConfig {
    GraphSpec graph = BinomialSpec{20000, 0.0005};
    SampleSpec sample{SamplingMethod::random, 200, 0.5};
    TrialPlan trials;
    std::uint64_t seed = 1;
    EstimatorSettings estimator;
    std::string output = "-";
    OutputFormat format = OutputFormat::json;
    std::string preset; ///< setting string this config came from, if any
};

void validate(const ExperimentConfig& config);

/// Configuration for a setting string such as "bin 20000 rand 200" or
/// "sbm 100000 snow 1000". Graph types: bin, pow_a, pow_b, sbm; sizes 20000,
/// 40000, 100000; methods rand, snow. Throws ParameterError otherwise.
ExperimentConfig preset_config(std::string_view name);

/// Every known setting string, in table order.
std::vector<std::string> preset_names();

/// Worker count: $DSPD_THREADS if set and positive, else the hardware concurrency.
unsigned default_threads();

/// Analytical distance distribution for the configured graph model, sampling
/// method and sample size.
DistanceDistribution estimate(const ExperimentConfig& config);

struct TrialOutcome {
    int graph_index = 0;
    int sample_index = 0;
    std::uint64_t graph_seed = 0;
    std::uint64_t sample_seed = 0;
    DistanceDistribution distribution;
    double wasserstein = 0.0; ///< distance to the analytical estimate
    double bfs_seconds = 0.0;
};

struct Summary {
    double mean = 0.0;
    double std = 0.0; ///< population standard deviation
};

Summary summarize(const std::vector<double>& values);

struct EmpiricalResult {
    DistanceDistribution estimate;
    DistanceDistribution averaged;
    std::vector<TrialOutcome> trials; ///< ordered by (graph_index, sample_index)
    Summary wasserstein;
    Summary bfs_seconds;
};

/// graphs x samples_per_graph trials. Graph g uses seed mix_seed(seed, g) and
/// its sample j uses mix_seed(graph seed, j + 1), so results do not depend on
/// the thread count. Failures are rethrown naming the graph and sample seeds.
EmpiricalResult run_empirical(const ExperimentConfig& config, unsigned threads = default_threads());

struct ComparisonResult {
    DistanceDistribution estimate_first;
    DistanceDistribution estimate_second;
    MethodComparison estimated;
    std::optional<EmpiricalResult> empirical_first;
    std::optional<EmpiricalResult> empirical_second;
    std::optional<MethodComparison> empirical;

    /// Whether estimated and empirical preferences coincide (when validated).
    std::optional<bool> agrees() const;
};

/// Compares two configs that differ only in sampling method. Throws
/// ParameterError if anything else differs or the methods coincide.
ComparisonResult run_compare(const ExperimentConfig& first, const ExperimentConfig& second, bool validate_empirically,
                             unsigned threads = default_threads());

struct TimingStats {
    double mean = 0.0;
    double std = 0.0;
    double median = 0.0;
    std::vector<double> seconds;
};

struct BenchResult {
    int repetitions = 0;
    TimingStats framework;
    TimingStats empirical;
};

/// Times `repetitions` analytical estimates and `repetitions` BFS evaluations
/// on one pre-generated graph and pre-drawn sample. Setup is not timed.
BenchResult run_bench(const ExperimentConfig& config, int repetitions);

} // namespace dspd
