#pragma once

#include "stackmc/distribution.hpp"
#include "stackmc/fitters.hpp"
#include "stackmc/rng.hpp"
#include "stackmc/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stackmc {

enum class AlphaMethod {
    Original,  // cov(g, f) / var(g) over the held-out predictions
    Improved,  // cov(a, c) / (var(a) + b_g^2) over per-fold statistics
};

// Per-fold sample pair (a_k, c_k) used by the improved estimator. a_k is a
// mean of fit predictions minus g^_k and c_k the matching mean of f.
enum class FoldStatistic {
    HeldOut,   // fold k's predictions and values at its held-out points
    CrossFit,  // out-of-fold predictions g_i and values over fold k's held-in indices
    FoldFit,   // fold k's own fit and values at its held-in points
};

std::string to_string(AlphaMethod method);
AlphaMethod alpha_method_from_string(const std::string& name);
std::string to_string(FoldStatistic stat);
FoldStatistic fold_statistic_from_string(const std::string& name);

struct AlphaOptions {
    AlphaMethod method = AlphaMethod::Improved;
    bool assume_unbiased_g = false;
    FoldStatistic statistic = FoldStatistic::HeldOut;
    // Overrides estimation; every fitter gets this coefficient.
    std::optional<double> fixed;
};

// How each fold's fit mean g^_k is obtained.
struct MeanMode {
    enum class Kind { Analytic, MonteCarlo };

    Kind kind = Kind::Analytic;
    std::size_t samples = 300;
    std::uint64_t seed = 0;

    static MeanMode analytic() { return {}; }
    static MeanMode monte_carlo(std::size_t samples, std::uint64_t seed) { return {Kind::MonteCarlo, samples, seed}; }
};

struct FoldResult {
    std::size_t fold = 0;
    double ghat = 0.0;
    std::vector<std::size_t> heldout_index;
    std::vector<double> heldout_g;
    std::vector<double> heldout_f;
    double heldin_gtilde = 0.0;
    double heldin_ftilde = 0.0;
};

struct EstimateReport {
    double estimate = 0.0;
    std::vector<double> alpha;                          // one per fitter
    std::vector<std::vector<FoldResult>> fold_results;  // [fitter][fold]
    std::string method;
    double mc_baseline = 0.0;                           // plain sample mean of the targets
    std::optional<double> fit_alone;                    // g^ of the first fitter trained on all data
    std::vector<double> repeat_estimates;               // quasi-MC variant only
};

// Trains one fit per fold on its held-in points and records the fit mean
// and the held-out predictions. Every index receives exactly one g_i.
std::vector<FoldResult> run_folds(const DataSet& data, const FoldPartition& partition, const FitterSpec& spec,
                                  const Distribution& p, const MeanMode& mean_mode);

// Rewrites heldin_gtilde of every fold as the mean of the out-of-fold
// predictions g_i over its held-in indices.
void apply_cross_fit_means(std::vector<FoldResult>& folds, const FoldPartition& partition);

// The per-fold samples a_k and c_k for the chosen statistic. CrossFit expects
// apply_cross_fit_means to have run.
struct FoldSamples {
    std::vector<double> a;
    std::vector<double> c;
};
FoldSamples fold_samples(std::span<const FoldResult> folds, FoldStatistic stat);

// cov(g, f) / var(g); 0 when var(g) < 1e-12 var(f).
double alpha_original(std::span<const double> g, std::span<const double> f);

// cov(a, c) / (var(a) + b_g^2) over fold_samples(folds, stat) with
// b_g = mean(a) (or 0 when assume_unbiased_g). 0 when the denominator is
// below 1e-12 var(c).
double alpha_improved(std::span<const FoldResult> folds, bool assume_unbiased_g,
                      FoldStatistic stat = FoldStatistic::HeldOut);

// Combines fold results of one or more fitters into a single estimate with
// one global coefficient per fitter (pseudo-inverse of the fitter Gram
// matrix for several fitters).
struct StackedEstimate {
    double estimate = 0.0;
    std::vector<double> alpha;
};
StackedEstimate stack_folds(std::span<const std::vector<FoldResult>> per_fitter, const AlphaOptions& options);

// g^ of a single fit trained on every sample.
double fit_alone(const DataSet& data, const FitterSpec& spec, const Distribution& p, const MeanMode& mean_mode);

EstimateReport stackmc_estimate(const DataSet& data, const FoldPartition& partition, const FitterSpec& spec,
                                const Distribution& p, const AlphaOptions& alpha = {},
                                const MeanMode& mean_mode = MeanMode::analytic());

EstimateReport stackmc_multi(const DataSet& data, const FoldPartition& partition, std::span<const FitterSpec> specs,
                             const Distribution& p, const AlphaOptions& alpha = {},
                             const MeanMode& mean_mode = MeanMode::analytic());

// Quasi-MC repair: n_repeats fresh partitions whose held-in sets are drawn
// without replacement from all samples; the estimate is the repeat average.
EstimateReport stackmc_quasimc(const DataSet& data, std::size_t folds, std::span<const FitterSpec> specs,
                               const Distribution& p, std::size_t n_repeats, RngStream& rng,
                               const MeanMode& mean_mode = MeanMode::analytic(), const AlphaOptions& alpha = {});

// Importance-sampled data: fits target f * p/q and fit means are Monte Carlo
// estimates from n_mean draws of q.
EstimateReport stackmc_importance(const DataSet& data, const FoldPartition& partition,
                                  std::span<const FitterSpec> specs, const Distribution& q, std::size_t n_mean,
                                  std::uint64_t mean_seed, const AlphaOptions& alpha = {});

}  // namespace stackmc
