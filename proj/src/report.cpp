#include "dspd/report.hpp"

#include <cstdio>
#include <sstream>
#include <variant>

#include "dspd/error.hpp"

namespace dspd {

namespace {

using nlohmann::json;

json graph_json(const GraphSpec& spec) {
    if (const auto* s = std::get_if<BinomialSpec>(&spec)) {
        return {{"type", "binomial"}, {"n", s->n}, {"p", s->p}};
    }
    if (const auto* s = std::get_if<PowerLawSpec>(&spec)) {
        return {{"type", "power_law"}, {"n", s->n}, {"gamma", s->gamma}, {"k_min", s->k_min}, {"k_max", s->k_max}};
    }
    const auto& s = std::get<SbmSpec>(spec);
    return {{"type", "sbm"}, {"blocks", s.blocks}, {"block_size", s.block_size}, {"p1", s.p1}, {"p2", s.p2}};
}

json timing_json(const TimingStats& t) {
    return {{"mean", t.mean}, {"std", t.std}, {"median", t.median}};
}

const char* preference_label(Preference p, const ExperimentConfig& first, const ExperimentConfig& second) {
    switch (p) {
    case Preference::first:
        return first.sample.method == SamplingMethod::random ? "random" : "snowball";
    case Preference::second:
        return second.sample.method == SamplingMethod::random ? "random" : "snowball";
    case Preference::tie:
        break;
    }
    return "tie";
}

json comparison_json(const MethodComparison& c, const DistanceDistribution& a, const DistanceDistribution& b,
                     const ExperimentConfig& first, const ExperimentConfig& second) {
    return {{"mean_a", mean_distance(a)},
            {"mean_b", mean_distance(b)},
            {"difference", c.difference},
            {"smaller_mean", preference_label(c.smaller_mean, first, second)}};
}

void append_row(std::ostringstream& os, std::size_t distance, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", distance, a);
    os << buf;
}

} // namespace

json to_json(const ExperimentConfig& config) {
    json j = {
        {"graph", graph_json(config.graph)},
        {"sample",
         {{"method", to_string(config.sample.method)},
          {"size", config.sample.size},
          {"retention", config.sample.retention}}},
        {"trials", {{"graphs", config.trials.graphs}, {"samples_per_graph", config.trials.samples_per_graph}}},
        {"seed", config.seed},
        {"estimator",
         {{"l_max", config.estimator.l_max},
          {"conv_eps", config.estimator.conv_eps},
          {"tail_eps", config.estimator.tail_eps}}},
        {"output", {{"path", config.output}, {"format", config.format == OutputFormat::json ? "json" : "csv"}}},
    };
    if (!config.preset.empty()) {
        j["preset"] = config.preset;
    }
    return j;
}

json to_json(const DistanceDistribution& d) {
    json pmf = json::array();
    const auto p = d.pmf();
    for (std::size_t l = 0; l < p.size(); ++l) {
        pmf.push_back({{"distance", l}, {"probability", p[l]}});
    }
    json j = {{"survival", d.survival}, {"pmf", pmf}, {"residual", d.residual}};
    try {
        j["mean_distance"] = mean_distance(d);
    } catch (const DomainError&) {
        j["mean_distance"] = nullptr;
    }
    return j;
}

json estimate_report(const ExperimentConfig& config, const DistanceDistribution& estimate) {
    json j = to_json(estimate);
    j["config"] = to_json(config);
    return j;
}

json empirical_report(const ExperimentConfig& config, const EmpiricalResult& result, bool include_timing) {
    json j = to_json(result.averaged);
    j["config"] = to_json(config);
    j["estimate"] = to_json(result.estimate);
    j["wasserstein1"] = {{"mean", result.wasserstein.mean}, {"std", result.wasserstein.std}};
    json trials = json::array();
    for (const auto& t : result.trials) {
        json tj = to_json(t.distribution);
        tj["graph_index"] = t.graph_index;
        tj["sample_index"] = t.sample_index;
        tj["graph_seed"] = t.graph_seed;
        tj["sample_seed"] = t.sample_seed;
        tj["wasserstein1"] = t.wasserstein;
        trials.push_back(std::move(tj));
    }
    j["per_trial"] = std::move(trials);
    if (include_timing) {
        json seconds = json::array();
        for (const auto& t : result.trials) {
            seconds.push_back(t.bfs_seconds);
        }
        j["timing"] = {{"bfs_seconds", {{"mean", result.bfs_seconds.mean}, {"std", result.bfs_seconds.std}}},
                       {"per_trial_bfs_seconds", seconds}};
    }
    return j;
}

json compare_report(const ExperimentConfig& first, const ExperimentConfig& second, const ComparisonResult& result,
                    bool include_timing) {
    json j = {
        {"config_a", to_json(first)},
        {"config_b", to_json(second)},
        {"estimate_a", to_json(result.estimate_first)},
        {"estimate_b", to_json(result.estimate_second)},
        {"estimated", comparison_json(result.estimated, result.estimate_first, result.estimate_second, first, second)},
    };
    if (result.empirical) {
        j["empirical"] = comparison_json(*result.empirical, result.empirical_first->averaged,
                                         result.empirical_second->averaged, first, second);
        j["empirical"]["wasserstein1_a"] = {{"mean", result.empirical_first->wasserstein.mean},
                                            {"std", result.empirical_first->wasserstein.std}};
        j["empirical"]["wasserstein1_b"] = {{"mean", result.empirical_second->wasserstein.mean},
                                            {"std", result.empirical_second->wasserstein.std}};
        j["agreement"] = *result.agrees();
        if (include_timing) {
            j["timing"] = {{"bfs_seconds_a", result.empirical_first->bfs_seconds.mean},
                           {"bfs_seconds_b", result.empirical_second->bfs_seconds.mean}};
        }
    } else {
        j["agreement"] = nullptr;
    }
    return j;
}

json bench_report(const ExperimentConfig& config, const BenchResult& result) {
    return {
        {"config", to_json(config)},
        {"timing",
         {{"repetitions", result.repetitions},
          {"framework_seconds", timing_json(result.framework)},
          {"empirical_seconds", timing_json(result.empirical)}}},
    };
}

std::string estimate_csv(const DistanceDistribution& estimate) {
    std::ostringstream os;
    os << "distance,probability\n";
    const auto p = estimate.pmf();
    for (std::size_t l = 0; l < p.size(); ++l) {
        append_row(os, l, p[l]);
    }
    return os.str();
}

std::string empirical_csv(const EmpiricalResult& result) {
    std::ostringstream os;
    os << "distance,probability,estimate\n";
    const auto emp = result.averaged.pmf();
    const auto est = result.estimate.pmf();
    for (std::size_t l = 0; l < std::max(emp.size(), est.size()); ++l) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", l, l < emp.size() ? emp[l] : 0.0,
                      l < est.size() ? est[l] : 0.0);
        os << buf;
    }
    return os.str();
}

} // namespace dspd
