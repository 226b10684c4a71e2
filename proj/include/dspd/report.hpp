#pragma once

#include <string>

#include "json.hpp"

#include "dspd/distance_distribution.hpp"
#include "dspd/experiment.hpp"

namespace dspd {

nlohmann::json to_json(const ExperimentConfig& config);

/// {survival, pmf: [{distance, probability}], residual, mean_distance}.
/// mean_distance is null when nothing is reachable.
nlohmann::json to_json(const DistanceDistribution& d);

nlohmann::json estimate_report(const ExperimentConfig& config, const DistanceDistribution& estimate);

/// Top-level survival/pmf/residual/mean_distance are the averaged empirical
/// distribution. Timing is omitted when include_timing is false, which makes
/// the report byte-identical across runs with the same seed.
nlohmann::json empirical_report(const ExperimentConfig& config, const EmpiricalResult& result, bool include_timing);

nlohmann::json compare_report(const ExperimentConfig& first, const ExperimentConfig& second,
                              const ComparisonResult& result, bool include_timing);

nlohmann::json bench_report(const ExperimentConfig& config, const BenchResult& result);

/// "distance,probability" rows.
std::string estimate_csv(const DistanceDistribution& estimate);

/// "distance,probability,estimate" rows; probability is the averaged empirical pmf.
std::string empirical_csv(const EmpiricalResult& result);

} // namespace dspd
