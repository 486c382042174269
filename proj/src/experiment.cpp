#include "stackmc/experiment.hpp"

#include "stackmc/engine.hpp"
#include "stackmc/samplers.hpp"
#include "stackmc/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace stackmc {

namespace {

constexpr std::uint64_t kBurnInRange = 10000;

std::vector<std::string> fitter_labels(const std::vector<FitterSpec>& fitters)
{
    std::map<std::string, int> count;
    for (const auto& f : fitters) ++count[f.label()];
    std::map<std::string, int> seen;
    std::vector<std::string> out;
    for (const auto& f : fitters) {
        std::string label = f.label();
        if (count[label] > 1) label += "_" + std::to_string(++seen[label]);
        out.push_back(label);
    }
    return out;
}

std::string alpha_suffix(const ExperimentConfig& c, AlphaMethod m)
{
    return c.alpha_methods.size() > 1 ? ":" + to_string(m) : std::string();
}

AlphaOptions alpha_options(const ExperimentConfig& c, AlphaMethod m)
{
    AlphaOptions a;
    a.method = m;
    a.assume_unbiased_g = c.assume_unbiased_g;
    a.statistic = c.fold_statistic;
    return a;
}

}  // namespace

std::span<const double> ExperimentResult::errors(std::size_t grid, const std::string& estimator) const
{
    auto it = std::find(estimators.begin(), estimators.end(), estimator);
    if (it == estimators.end()) throw std::out_of_range("no estimator named '" + estimator + "'");
    return squared_errors.at(grid).at(static_cast<std::size_t>(it - estimators.begin()));
}

std::vector<std::string> estimator_names(const ExperimentConfig& c)
{
    std::vector<std::string> names{"mc"};
    const auto labels = fitter_labels(c.fitters);
    const bool several = c.fitters.size() > 1;
    for (const auto& l : labels) names.push_back(several ? "fit_alone:" + l : "fit_alone");
    for (auto m : c.alpha_methods) {
        const std::string sfx = alpha_suffix(c, m);
        if (several) {
            for (const auto& l : labels) names.push_back("stackmc:" + l + sfx);
        }
        names.push_back("stackmc" + sfx);
    }
    if (c.variant.kind == VariantKind::QuasiMC) {
        for (auto m : c.alpha_methods) names.push_back("stackmc_boot" + alpha_suffix(c, m));
    }
    return names;
}

DataSet draw_dataset(const ExperimentConfig& c, std::size_t n, RngStream& rng)
{
    const Distribution& p = c.distribution;
    DataSet data{PointSet(p.dim()), {}, std::nullopt};
    switch (c.sampler.kind) {
    case SamplerKind::Simple: data.points = simple_sample(p, n, rng); break;
    case SamplerKind::LatinHypercube: data.points = transform_to(latin_hypercube(n, p.dim(), rng), p); break;
    case SamplerKind::Halton: {
        std::optional<std::uint64_t> scramble;
        if (c.sampler.scramble) scramble = c.sampler.scramble_seed ? *c.sampler.scramble_seed : rng.next_u64();
        const std::uint64_t burn_in = c.sampler.burn_in ? *c.sampler.burn_in : rng.below(kBurnInRange);
        data.points = transform_to(halton(n, p.dim(), scramble, burn_in), p);
        break;
    }
    case SamplerKind::Importance: data = importance_sample(p, *c.sampler.proposal, n, rng); break;
    }
    data.values = c.function.make().evaluate(data.points);
    return data;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial)
{
    return derive_seed(derive_seed(seed, n), trial);
}

std::vector<double> run_trial(const ExperimentConfig& c, std::size_t n, std::uint64_t seed, double reference)
{
    RngStream root(seed);
    RngStream data_rng = root.split(0);
    RngStream fold_rng = root.split(1);
    RngStream boot_rng = root.split(3);
    const std::uint64_t mean_seed = derive_seed(seed, 2);

    DataSet data = draw_dataset(c, n, data_rng);
    const bool importance = c.variant.kind == VariantKind::Importance;
    const Distribution& fit_p = importance ? *c.sampler.proposal : c.distribution;
    if (importance) {
        for (std::size_t i = 0; i < data.size(); ++i) data.values[i] *= (*data.weights)[i];
        data.weights.reset();
    }

    auto mean_mode = [&](const FitterSpec& spec, std::uint64_t stream) {
        if (importance) return MeanMode::monte_carlo(c.variant.n_mean, derive_seed(mean_seed, stream));
        if (!c.fit_mean_samples && has_analytic_mean(spec, fit_p)) return MeanMode::analytic();
        return MeanMode::monte_carlo(c.fit_mean_samples.value_or(300), derive_seed(mean_seed, stream));
    };

    std::vector<double> estimates;
    estimates.push_back(mean(data.values));

    const std::size_t k = c.folds.value_or(n);
    const FoldPartition partition = make_partition(n, k, fold_rng);
    std::vector<std::vector<FoldResult>> folds;
    for (std::size_t i = 0; i < c.fitters.size(); ++i) {
        estimates.push_back(fit_alone(data, c.fitters[i], fit_p, mean_mode(c.fitters[i], 2 * i)));
        folds.push_back(run_folds(data, partition, c.fitters[i], fit_p, mean_mode(c.fitters[i], 2 * i + 1)));
        if (c.fold_statistic == FoldStatistic::CrossFit) apply_cross_fit_means(folds.back(), partition);
    }

    for (auto m : c.alpha_methods) {
        const AlphaOptions opts = alpha_options(c, m);
        if (folds.size() > 1) {
            for (const auto& f : folds) estimates.push_back(stack_folds(std::span(&f, 1), opts).estimate);
        }
        estimates.push_back(stack_folds(folds, opts).estimate);
    }

    if (c.variant.kind == VariantKind::QuasiMC) {
        bool analytic = !c.fit_mean_samples;
        for (const auto& f : c.fitters) analytic = analytic && has_analytic_mean(f, fit_p);
        const MeanMode mode = analytic ? MeanMode::analytic()
                                       : MeanMode::monte_carlo(c.fit_mean_samples.value_or(300), derive_seed(mean_seed, 999));
        for (auto m : c.alpha_methods) {
            RngStream rng = boot_rng.split(static_cast<std::uint64_t>(m));
            estimates.push_back(
                stackmc_quasimc(data, k, c.fitters, fit_p, c.variant.repeats, rng, mode, alpha_options(c, m)).estimate);
        }
    }

    for (double& e : estimates) e = (e - reference) * (e - reference);
    return estimates;
}

ExperimentResult run_experiment(const ExperimentConfig& c, std::size_t threads)
{
    if (auto problems = validate(c); !problems.empty()) throw ConfigError(std::move(problems));

    ExperimentResult result;
    result.estimators = estimator_names(c);
    result.reference = reference_mean(c.function.make(), c.distribution);
    const std::size_t nest = result.estimators.size();
    const std::size_t grid = c.n_grid.size();
    const std::size_t items = grid * c.trials;

    std::vector<std::vector<double>> per_item(items);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::size_t error_item = items;
    std::string error_message;

    auto worker = [&] {
        for (;;) {
            const std::size_t item = next.fetch_add(1);
            if (item >= items || failed.load()) return;
            const std::size_t g = item / c.trials;
            const std::size_t t = item % c.trials;
            const std::uint64_t seed = trial_seed(c.seed, c.n_grid[g], t);
            try {
                per_item[item] = run_trial(c, c.n_grid[g], seed, result.reference);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (item < error_item) {
                    error_item = item;
                    error_message = "trial " + std::to_string(t) + " at n=" + std::to_string(c.n_grid[g]) +
                                    " failed (trial seed " + std::to_string(seed) + "): " + e.what();
                }
                failed = true;
            }
        }
    };

    if (threads == 0) threads = c.threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(items, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failed) throw std::runtime_error(error_message);

    result.squared_errors.assign(grid, std::vector<std::vector<double>>(nest, std::vector<double>(c.trials)));
    for (std::size_t item = 0; item < items; ++item) {
        const std::size_t g = item / c.trials;
        const std::size_t t = item % c.trials;
        for (std::size_t e = 0; e < nest; ++e) result.squared_errors[g][e][t] = per_item[item][e];
    }

    for (std::size_t g = 0; g < grid; ++g) {
        for (std::size_t e = 0; e < nest; ++e) {
            const auto& se = result.squared_errors[g][e];
            ResultRow row;
            row.n = c.n_grid[g];
            row.estimator = result.estimators[e];
            row.mse = mean(se);
            row.std_error = c.trials > 1 ? std::sqrt(sample_var(se) / static_cast<double>(c.trials)) : 0.0;
            row.trials = c.trials;
            result.rows.push_back(std::move(row));
        }
    }
    if (c.trials == 1) {
        result.warnings.push_back("trials = 1: standard errors are reported as 0 and carry no information");
    }
    if (!c.fit_mean_samples && c.variant.kind != VariantKind::Importance) {
        for (const auto& f : c.fitters) {
            if (!has_analytic_mean(f, c.distribution)) {
                result.warnings.push_back("no closed-form mean for " + f.label() + " under " + c.distribution.name() +
                                          "; using 300-sample Monte Carlo fit means");
            }
        }
    }
    return result;
}

double paired_stderr(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) throw std::invalid_argument("paired_stderr: length mismatch");
    if (a.size() < 2) return 0.0;
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return std::sqrt(sample_var(diff) / static_cast<double>(diff.size()));
}

}  // namespace stackmc
