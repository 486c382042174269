#pragma once

#include "stackmc/distribution.hpp"
#include "stackmc/engine.hpp"
#include "stackmc/fitters.hpp"
#include "stackmc/testfunctions.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace stackmc {

// Raised for invalid experiment configurations; carries every problem found.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);

    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

struct FunctionSpec {
    FunctionKind kind = FunctionKind::Quadratic1D;
    std::size_t dim = 1;
    int threshold = -1;  // FourPeaks only; -1 selects round(0.1 d)

    TestFunction make() const;

    bool operator==(const FunctionSpec&) const = default;
};

enum class SamplerKind { Simple, LatinHypercube, Halton, Importance };

struct SamplerSpec {
    SamplerKind kind = SamplerKind::Simple;
    // Halton: scramble with a fresh per-trial seed unless scramble_seed is set.
    bool scramble = true;
    std::optional<std::uint64_t> scramble_seed;
    // Halton: fixed burn-in; unset draws it uniformly from [0, 10^4) per trial.
    std::optional<std::uint64_t> burn_in;
    // Importance: the proposal density q.
    std::optional<Distribution> proposal;

    bool operator==(const SamplerSpec&) const = default;
};

enum class VariantKind { Plain, QuasiMC, Importance };

struct VariantSpec {
    VariantKind kind = VariantKind::Plain;
    std::size_t repeats = 10;  // QuasiMC
    std::size_t n_mean = 300;  // Importance

    bool operator==(const VariantSpec&) const = default;
};

struct ExperimentConfig {
    std::string name = "experiment";
    FunctionSpec function;
    Distribution distribution = Distribution::uniform_box(0.0, 1.0, 1);
    SamplerSpec sampler;
    std::vector<FitterSpec> fitters{FitterSpec::linear()};
    std::optional<std::size_t> folds = 5;  // unset: leave-one-out (K = N)
    std::vector<AlphaMethod> alpha_methods{AlphaMethod::Improved};
    bool assume_unbiased_g = false;
    FoldStatistic fold_statistic = FoldStatistic::HeldOut;
    std::optional<std::size_t> fit_mean_samples;  // unset: analytic fit means where available
    VariantSpec variant;
    std::vector<std::size_t> n_grid{16};
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::size_t threads = 0;  // 0: hardware concurrency
    std::string output = "results";
    std::vector<std::string> emit{"csv", "json"};

    bool operator==(const ExperimentConfig&) const = default;
};

// Every problem with the configuration; empty when valid.
std::vector<std::string> validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const Distribution& p);

// Throws ConfigError listing every problem found.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
Distribution parse_distribution(const nlohmann::json& doc);

std::string to_string(SamplerKind kind);
std::string to_string(VariantKind kind);

}  // namespace stackmc
