// dspd: estimate, measure and compare distance-to-sample distributions.
//
//   dspd estimate  --graph binomial --n 20000 --p 0.0005 --method random --s 200
//   dspd empirical --preset "bin 20000 rand 200"
//   dspd compare   --preset "pow_a 20000 rand 1000" --method-b snowball --validate
//   dspd bench     --preset "bin 100000 rand 200" --repetitions 100
//   dspd presets
//
// Exit codes: 0 success, 2 usage or parameter error, 1 runtime failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dspd/error.hpp"
#include "dspd/experiment.hpp"
#include "dspd/report.hpp"

namespace {

using dspd::ExperimentConfig;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConfigFlags {
    std::string preset;
    std::string graph;
    std::int64_t n = 0;
    double p = 0.0;
    double gamma = 0.0;
    std::int64_t k_min = 0;
    std::int64_t k_max = 0;
    std::int64_t blocks = 0;
    std::int64_t block_size = 0;
    double p1 = 0.0;
    double p2 = 0.0;
    std::string method;
    double retention = 0.5;
    std::int64_t s = 0;
    int graphs = 5;
    int samples_per_graph = 20;
    std::uint64_t seed = 1;
    int l_max = 64;
    double conv_eps = 1e-9;
    double tail_eps = 1e-12;
    std::string output = "-";
    std::string format = "json";
    std::string config_path;

    std::map<std::string, CLI::Option*> opts;

    bool given(const std::string& name) const { return opts.at(name)->count() > 0; }
};

void add_config_flags(CLI::App* app, ConfigFlags& f) {
    // Repeated flags keep the last value, so file values spliced in ahead of
    // the command line lose to it.
    app->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app->add_option("--config", f.config_path, "TOML file whose keys are long flag names; command-line flags win");
    auto add = [&](const std::string& name, auto& target, const std::string& help) {
        return f.opts[name] = app->add_option("--" + name, target, help);
    };
    add("preset", f.preset, "setting string, e.g. \"bin 20000 rand 200\"");
    add("graph", f.graph, "binomial | power_law | sbm");
    add("n", f.n, "node count (binomial, power_law)");
    add("p", f.p, "edge probability (binomial)");
    add("gamma", f.gamma, "power-law exponent");
    add("k-min", f.k_min, "smallest power-law degree");
    add("k-max", f.k_max, "largest power-law degree");
    add("blocks", f.blocks, "SBM block count");
    add("block-size", f.block_size, "SBM nodes per block");
    add("p1", f.p1, "SBM within-block edge probability");
    add("p2", f.p2, "SBM across-block edge probability");
    add("method", f.method, "random | snowball");
    add("retention", f.retention, "snowball acceptance probability");
    add("s", f.s, "sample size");
    add("graphs", f.graphs, "graphs per empirical run");
    add("samples-per-graph", f.samples_per_graph, "samples per graph");
    add("seed", f.seed, "root seed");
    add("l-max", f.l_max, "deepest shell computed");
    add("conv-eps", f.conv_eps, "shell convergence tolerance");
    add("tail-eps", f.tail_eps, "pmf tail truncation");
    add("output", f.output, "output path, - for stdout");
    add("format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

template <class T>
T require(const ConfigFlags& f, const std::string& name, const T& value) {
    if (!f.given(name)) {
        throw UsageError("--graph " + f.graph + " requires --" + name);
    }
    return value;
}

ExperimentConfig build_config(const ConfigFlags& f) {
    ExperimentConfig config;
    const bool from_preset = f.given("preset");
    if (from_preset) {
        config = dspd::preset_config(f.preset);
    }
    if (f.given("graph")) {
        if (f.graph == "binomial") {
            config.graph = dspd::BinomialSpec{require(f, "n", f.n), require(f, "p", f.p)};
        } else if (f.graph == "power_law") {
            config.graph = dspd::PowerLawSpec{require(f, "n", f.n), require(f, "gamma", f.gamma),
                                              require(f, "k-min", f.k_min), require(f, "k-max", f.k_max)};
        } else if (f.graph == "sbm") {
            config.graph = dspd::SbmSpec{require(f, "blocks", f.blocks), require(f, "block-size", f.block_size),
                                         require(f, "p1", f.p1), require(f, "p2", f.p2)};
        } else {
            throw UsageError("--graph must be binomial, power_law or sbm");
        }
        config.preset.clear();
    } else if (!from_preset) {
        throw UsageError("either --preset or --graph is required");
    }
    if (f.given("method")) {
        config.sample.method = dspd::parse_sampling_method(f.method);
        config.preset.clear();
    } else if (!from_preset) {
        throw UsageError("--method is required without --preset");
    }
    if (f.given("s")) {
        config.sample.size = f.s;
        config.preset.clear();
    } else if (!from_preset) {
        throw UsageError("--s is required without --preset");
    }
    if (f.given("retention")) {
        config.sample.retention = f.retention;
    }
    config.trials = {f.graphs, f.samples_per_graph};
    config.seed = f.seed;
    config.estimator = {f.l_max, f.conv_eps, f.tail_eps};
    config.output = f.output;
    config.format = f.format == "csv" ? dspd::OutputFormat::csv : dspd::OutputFormat::json;
    dspd::validate(config);
    return config;
}

void emit(const ExperimentConfig& config, const std::string& text) {
    if (config.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(config.output);
    if (!out) {
        throw std::runtime_error("cannot open output file " + config.output);
    }
    out << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Returns argv[1..] with the keys of a subcommand's --config file inserted as
// flags right after the subcommand name. Keys may sit at top level or in a
// table named after the subcommand.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) {
        return a == "estimate" || a == "empirical" || a == "compare" || a == "bench";
    });
    if (sub == args.end()) {
        return args;
    }
    std::optional<std::string> path;
    for (auto it = sub + 1; it != args.end(); ++it) {
        if (*it == "--config" && it + 1 != args.end()) {
            path = *(it + 1);
        } else if (it->rfind("--config=", 0) == 0) {
            path = it->substr(9);
        }
    }
    if (!path) {
        return args;
    }
    std::vector<std::string> spliced;
    for (const auto& item : CLI::ConfigTOML().from_file(*path)) {
        if (item.name == "++" || item.name == "--") {
            continue;
        }
        if (!item.parents.empty() && item.parents != std::vector<std::string>{*sub}) {
            continue;
        }
        std::string name = item.name;
        std::replace(name.begin(), name.end(), '_', '-');
        if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
            if (item.inputs[0] == "true") {
                spliced.push_back("--" + name);
            }
            continue;
        }
        spliced.push_back("--" + name);
        spliced.insert(spliced.end(), item.inputs.begin(), item.inputs.end());
    }
    args.insert(sub + 1, spliced.begin(), spliced.end());
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distance-to-sample distribution estimator"};
    app.require_subcommand(1);

    ConfigFlags est_flags;
    auto* estimate_cmd = app.add_subcommand("estimate", "analytical distribution for one configuration");
    add_config_flags(estimate_cmd, est_flags);

    ConfigFlags emp_flags;
    bool emp_no_timing = false;
    auto* empirical_cmd = app.add_subcommand("empirical", "BFS ground truth over generated graphs and samples");
    add_config_flags(empirical_cmd, emp_flags);
    empirical_cmd->add_flag("--no-timing", emp_no_timing, "omit timing fields");

    ConfigFlags cmp_flags;
    std::string method_b;
    std::string preset_b;
    bool validate = false;
    bool cmp_no_timing = false;
    auto* compare_cmd = app.add_subcommand("compare", "which sampling method gives the smaller mean distance");
    add_config_flags(compare_cmd, cmp_flags);
    auto* method_b_opt = compare_cmd->add_option("--method-b", method_b, "second method (default: the other one)");
    auto* preset_b_opt = compare_cmd->add_option("--preset-b", preset_b, "second configuration as a preset");
    method_b_opt->excludes(preset_b_opt);
    compare_cmd->add_flag("--validate", validate, "also run the empirical protocol for both");
    compare_cmd->add_flag("--no-timing", cmp_no_timing, "omit timing fields");

    ConfigFlags bench_flags;
    int repetitions = 100;
    auto* bench_cmd = app.add_subcommand("bench", "time estimation against single-trial BFS");
    add_config_flags(bench_cmd, bench_flags);
    bench_cmd->add_option("--repetitions", repetitions, "timed repetitions");

    auto* presets_cmd = app.add_subcommand("presets", "list setting strings accepted by --preset");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (presets_cmd->parsed()) {
            for (const auto& name : dspd::preset_names()) {
                std::cout << name << '\n';
            }
            return 0;
        }
        if (estimate_cmd->parsed()) {
            const ExperimentConfig config = build_config(est_flags);
            const auto est = dspd::estimate(config);
            emit(config, config.format == dspd::OutputFormat::csv ? dspd::estimate_csv(est)
                                                                : dump(dspd::estimate_report(config, est)));
        } else if (empirical_cmd->parsed()) {
            const ExperimentConfig config = build_config(emp_flags);
            const auto result = dspd::run_empirical(config);
            emit(config, config.format == dspd::OutputFormat::csv
                             ? dspd::empirical_csv(result)
                             : dump(dspd::empirical_report(config, result, !emp_no_timing)));
        } else if (compare_cmd->parsed()) {
            const ExperimentConfig first = build_config(cmp_flags);
            ExperimentConfig second = first;
            if (preset_b_opt->count() > 0) {
                const ExperimentConfig other = dspd::preset_config(preset_b);
                second.graph = other.graph;
                second.sample = other.sample;
                second.preset = other.preset;
            } else {
                second.sample.method = method_b_opt->count() > 0 ? dspd::parse_sampling_method(method_b)
                                       : first.sample.method == dspd::SamplingMethod::random
                                           ? dspd::SamplingMethod::snowball
                                           : dspd::SamplingMethod::random;
                second.preset.clear();
            }
            const auto result = dspd::run_compare(first, second, validate);
            emit(first, dump(dspd::compare_report(first, second, result, !cmp_no_timing)));
        } else if (bench_cmd->parsed()) {
            const ExperimentConfig config = build_config(bench_flags);
            const auto result = dspd::run_bench(config, repetitions);
            emit(config, dump(dspd::bench_report(config, result)));
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        for (auto* sub : app.get_subcommands()) {
            std::cerr << sub->help();
        }
        return 2;
    } catch (const dspd::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
