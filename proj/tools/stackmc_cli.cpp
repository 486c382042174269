// stackmc: run StackMC expected-squared-error experiments from config files
// or built-in presets.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include "stackmc/emit.hpp"
#include "stackmc/experiment.hpp"
#include "stackmc/presets.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::optional<std::string> out;
    std::optional<std::size_t> trials;
    std::vector<std::size_t> n_grid;
    std::vector<std::string> emit;
};

void add_run_options(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--out", o.out, "Output directory");
}

void apply(stackmc::ExperimentConfig& c, const Overrides& o)
{
    if (o.seed) c.seed = *o.seed;
    if (o.threads) c.threads = *o.threads;
    if (o.out) c.output = *o.out;
    if (o.trials) c.trials = *o.trials;
    if (!o.n_grid.empty()) c.n_grid = o.n_grid;
    if (!o.emit.empty()) c.emit = o.emit;
}

int run(const stackmc::ExperimentConfig& config)
{
    if (auto problems = stackmc::validate(config); !problems.empty()) throw stackmc::ConfigError(problems);
    std::cerr << "running " << config.name << ": " << config.n_grid.size() << " sample sizes x " << config.trials
              << " trials\n";
    const auto result = stackmc::run_experiment(config);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

    std::cout << "reference mean " << stackmc::format_double(result.reference) << "\n";
    std::cout << std::left << std::setw(8) << "n" << std::setw(28) << "estimator" << std::setw(16) << "mse"
              << "stderr\n";
    for (const auto& r : result.rows) {
        std::cout << std::left << std::setw(8) << r.n << std::setw(28) << r.estimator << std::setw(16)
                  << std::setprecision(6) << r.mse << r.std_error << "\n";
    }
    for (const auto& path : stackmc::emit(result.rows, config.emit, config.output, config.name)) {
        std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"StackMC experiment runner"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides run_overrides;
    auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a JSON config file");
    run_cmd->add_option("--config", config_path, "Experiment config file")->required();
    add_run_options(run_cmd, run_overrides);

    std::string preset_name;
    bool print_config = false;
    Overrides preset_overrides;
    auto* preset_cmd = app.add_subcommand("preset", "Run (or print) a built-in experiment");
    preset_cmd->add_option("name", preset_name, "Preset name (see list-presets)")->required();
    preset_cmd->add_flag("--print-config", print_config, "Print the preset's config as JSON and exit");
    add_run_options(preset_cmd, preset_overrides);
    preset_cmd->add_option("--trials", preset_overrides.trials, "Trials per sample size");
    preset_cmd->add_option("--n-grid", preset_overrides.n_grid, "Sample sizes")->delimiter(',');
    preset_cmd->add_option("--emit", preset_overrides.emit, "Output formats (csv, json, svg)")->delimiter(',');

    auto* list_cmd = app.add_subcommand("list-presets", "List built-in experiments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*list_cmd) {
            for (const auto& name : stackmc::preset_names()) {
                std::cout << std::left << std::setw(8) << name << stackmc::preset_description(name) << "\n";
            }
            return 0;
        }
        if (*run_cmd) {
            auto config = stackmc::load_config(config_path);
            apply(config, run_overrides);
            return run(config);
        }
        auto config = stackmc::preset(preset_name);
        apply(config, preset_overrides);
        if (print_config) {
            std::cout << stackmc::to_json(config).dump(2) << "\n";
            return 0;
        }
        return run(config);
    } catch (const stackmc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
