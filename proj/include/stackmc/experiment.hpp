#pragma once

#include "stackmc/config.hpp"
#include "stackmc/types.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stackmc {

// Aggregated squared error of one estimator at one sample size.
struct ResultRow {
    std::size_t n = 0;
    std::string estimator;
    double mse = 0.0;
    double std_error = 0.0;  // standard error of the mean squared error
    std::size_t trials = 0;

    bool operator==(const ResultRow&) const = default;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<std::string> estimators;
    double reference = 0.0;
    // squared_errors[grid index][estimator index][trial]
    std::vector<std::vector<std::vector<double>>> squared_errors;
    std::vector<std::string> warnings;

    // Per-trial squared errors of `estimator` at grid index `grid`.
    std::span<const double> errors(std::size_t grid, const std::string& estimator) const;
};

// Estimator labels the configuration produces, in output order.
//   mc                         plain sample mean (of f * p/q when importance sampling)
//   fit_alone[:fitter]         g^ of one fit trained on all samples
//   stackmc[:fitter][:alpha]   StackMC (all fitters combined when unqualified)
//   stackmc_boot[:alpha]       bootstrap-repaired StackMC (quasimc variant)
// A ":fitter" qualifier appears when there are several fitters and an
// ":alpha" qualifier when several alpha methods are compared.
std::vector<std::string> estimator_names(const ExperimentConfig& config);

// Draws one dataset for a trial: points from the configured sampler,
// function values, and importance weights when applicable.
DataSet draw_dataset(const ExperimentConfig& config, std::size_t n, RngStream& rng);

// Seed of trial `trial` at sample size n.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial);

// Squared error of every estimator on one trial's dataset.
std::vector<double> run_trial(const ExperimentConfig& config, std::size_t n, std::uint64_t seed, double reference);

// Runs every (n, trial) pair, in parallel over `threads` workers (0 uses the
// config's value, then the hardware concurrency). The output does not depend
// on the thread count. Throws ConfigError for invalid configurations and
// std::runtime_error naming the failing trial's seed otherwise.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t threads = 0);

// Standard error of the mean of a - b.
double paired_stderr(std::span<const double> a, std::span<const double> b);

}  // namespace stackmc
