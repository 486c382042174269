#include "stackmc/engine.hpp"

#include "stackmc/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stackmc {

namespace {

constexpr double kDegenerateRatio = 1e-12;
constexpr double kEigenCutoff = 1e-10;
constexpr std::uint64_t kFitAloneStream = std::numeric_limits<std::uint64_t>::max();

double fit_mean(const FitModel& model, const Distribution& p, const MeanMode& mode, std::uint64_t stream)
{
    if (mode.kind == MeanMode::Kind::Analytic) return analytic_mean(model, p);
    RngStream rng = split(mode.seed, stream);
    return mc_mean(model, p, mode.samples, rng);
}

Box fit_box(const FitterSpec& spec, const Distribution& p)
{
    return spec.kind == FitterKind::Fourier ? reference_box(p) : Box{};
}

MeanMode for_fitter(const MeanMode& mode, std::size_t fitter)
{
    MeanMode m = mode;
    m.seed = derive_seed(mode.seed, fitter);
    return m;
}

void check_inputs(const DataSet& data, const FoldPartition& partition)
{
    data.validate();
    const std::size_t k = partition.folds();
    if (k < 2) throw std::invalid_argument("StackMC needs at least two folds");
    if (data.size() < k) {
        throw std::invalid_argument("StackMC needs N >= K (N=" + std::to_string(data.size()) +
                                    ", K=" + std::to_string(k) + ")");
    }
    validate_partition(partition, data.size());
}

// Pseudo-inverse solve of the symmetric system w alpha = u; eigenvalues at or
// below max(cutoff * lambda_max, floor) are dropped.
std::vector<double> pinv_solve(const Eigen::MatrixXd& w, const Eigen::VectorXd& u, double floor)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double lmax = lambda.maxCoeff();
    const double cut = std::max(kEigenCutoff * lmax, floor);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(u.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] > cut && lambda[i] > 0.0) {
            const Eigen::VectorXd v = eig.eigenvectors().col(i);
            alpha += v * (v.dot(u) / lambda[i]);
        }
    }
    return {alpha.data(), alpha.data() + alpha.size()};
}

EstimateReport stack_report(const DataSet& data, const FoldPartition& partition, std::span<const FitterSpec> specs,
                            const Distribution& p, const AlphaOptions& alpha, const MeanMode& mean_mode)
{
    if (specs.empty()) throw std::invalid_argument("StackMC needs at least one fitter");
    EstimateReport report;
    report.fold_results.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        MeanMode mode = specs.size() == 1 ? mean_mode : for_fitter(mean_mode, i);
        report.fold_results.push_back(run_folds(data, partition, specs[i], p, mode));
        if (alpha.statistic == FoldStatistic::CrossFit) apply_cross_fit_means(report.fold_results.back(), partition);
    }
    StackedEstimate s = stack_folds(report.fold_results, alpha);
    report.estimate = s.estimate;
    report.alpha = std::move(s.alpha);
    report.method = alpha.fixed ? "fixed" : to_string(alpha.method);
    report.mc_baseline = mean(data.values);
    return report;
}

}  // namespace

std::string to_string(AlphaMethod method)
{
    return method == AlphaMethod::Original ? "original" : "improved";
}

AlphaMethod alpha_method_from_string(const std::string& name)
{
    if (name == "original") return AlphaMethod::Original;
    if (name == "improved") return AlphaMethod::Improved;
    throw std::invalid_argument("unknown alpha method '" + name + "' (expected original or improved)");
}

std::string to_string(FoldStatistic stat)
{
    switch (stat) {
    case FoldStatistic::HeldOut: return "held_out";
    case FoldStatistic::CrossFit: return "cross_fit";
    case FoldStatistic::FoldFit: return "fold_fit";
    }
    return "held_out";
}

FoldStatistic fold_statistic_from_string(const std::string& name)
{
    if (name == "held_out") return FoldStatistic::HeldOut;
    if (name == "cross_fit") return FoldStatistic::CrossFit;
    if (name == "fold_fit") return FoldStatistic::FoldFit;
    throw std::invalid_argument("unknown fold statistic '" + name + "' (expected held_out, cross_fit or fold_fit)");
}

std::vector<FoldResult> run_folds(const DataSet& data, const FoldPartition& partition, const FitterSpec& spec,
                                  const Distribution& p, const MeanMode& mean_mode)
{
    check_inputs(data, partition);
    const Box box = fit_box(spec, p);
    std::vector<FoldResult> out;
    out.reserve(partition.folds());
    std::vector<double> y;
    for (std::size_t k = 0; k < partition.folds(); ++k) {
        try {
            const auto& in = partition.heldin[k];
            const auto& held = partition.heldout[k];
            const PointSet train_x = data.points.subset(in);
            y.resize(in.size());
            for (std::size_t j = 0; j < in.size(); ++j) y[j] = data.values[in[j]];
            const FitModel model = train(spec, train_x, y, box);

            FoldResult r;
            r.fold = k;
            r.ghat = fit_mean(model, p, mean_mode, k);
            r.heldout_index = held;
            r.heldout_g = model.predict(data.points.subset(held));
            r.heldout_f.reserve(held.size());
            for (std::size_t i : held) r.heldout_f.push_back(data.values[i]);
            r.heldin_gtilde = mean(model.predict(train_x));
            r.heldin_ftilde = mean(y);
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw std::runtime_error("fold " + std::to_string(k) + ": " + e.what());
        }
    }
    return out;
}

void apply_cross_fit_means(std::vector<FoldResult>& folds, const FoldPartition& partition)
{
    std::size_t n = 0;
    for (const auto& f : folds) n += f.heldout_index.size();
    std::vector<double> g(n, 0.0);
    for (const auto& f : folds) {
        for (std::size_t j = 0; j < f.heldout_index.size(); ++j) g.at(f.heldout_index[j]) = f.heldout_g[j];
    }
    for (auto& f : folds) {
        const auto& in = partition.heldin.at(f.fold);
        double sum = 0.0;
        for (std::size_t i : in) sum += g.at(i);
        f.heldin_gtilde = sum / static_cast<double>(in.size());
    }
}

double alpha_original(std::span<const double> g, std::span<const double> f)
{
    const double vg = sample_var(g);
    const double vf = sample_var(f);
    if (!(vg > kDegenerateRatio * vf) || vg == 0.0) return 0.0;
    return sample_cov(g, f) / vg;
}

FoldSamples fold_samples(std::span<const FoldResult> folds, FoldStatistic stat)
{
    FoldSamples s;
    s.a.reserve(folds.size());
    s.c.reserve(folds.size());
    for (const auto& f : folds) {
        if (stat == FoldStatistic::HeldOut) {
            s.a.push_back(mean(f.heldout_g) - f.ghat);
            s.c.push_back(mean(f.heldout_f));
        } else {
            s.a.push_back(f.heldin_gtilde - f.ghat);
            s.c.push_back(f.heldin_ftilde);
        }
    }
    return s;
}

double alpha_improved(std::span<const FoldResult> folds, bool assume_unbiased_g, FoldStatistic stat)
{
    const auto [a, c] = fold_samples(folds, stat);
    const double bg = assume_unbiased_g ? 0.0 : mean(a);
    const double denom = sample_var(a) + bg * bg;
    if (!(denom > kDegenerateRatio * sample_var(c)) || denom == 0.0) return 0.0;
    return sample_cov(a, c) / denom;
}

StackedEstimate stack_folds(std::span<const std::vector<FoldResult>> per_fitter, const AlphaOptions& options)
{
    if (per_fitter.empty()) throw std::invalid_argument("stack_folds: no fitters");
    const std::size_t nfit = per_fitter.size();
    const std::size_t k = per_fitter[0].size();
    if (k < 2) throw std::invalid_argument("stack_folds: need at least two folds");
    for (const auto& folds : per_fitter) {
        if (folds.size() != k) throw std::invalid_argument("stack_folds: fitters disagree on the fold count");
    }

    StackedEstimate out;
    if (options.fixed) {
        out.alpha.assign(nfit, *options.fixed);
    } else if (nfit == 1) {
        if (options.method == AlphaMethod::Improved) {
            out.alpha = {alpha_improved(per_fitter[0], options.assume_unbiased_g, options.statistic)};
        } else {
            std::vector<double> g, f;
            for (const auto& r : per_fitter[0]) {
                g.insert(g.end(), r.heldout_g.begin(), r.heldout_g.end());
                f.insert(f.end(), r.heldout_f.begin(), r.heldout_f.end());
            }
            out.alpha = {alpha_original(g, f)};
        }
    } else {
        // Per-fitter sample vectors: fold statistics (improved) or pooled
        // held-out predictions (original).
        std::vector<std::vector<double>> a(nfit);
        std::vector<double> c;
        std::vector<double> bias(nfit, 0.0);
        for (std::size_t i = 0; i < nfit; ++i) {
            if (options.method == AlphaMethod::Improved) {
                auto s = fold_samples(per_fitter[i], options.statistic);
                a[i] = std::move(s.a);
                if (i == 0) c = std::move(s.c);
            } else {
                for (const auto& r : per_fitter[i]) {
                    a[i].insert(a[i].end(), r.heldout_g.begin(), r.heldout_g.end());
                    if (i == 0) c.insert(c.end(), r.heldout_f.begin(), r.heldout_f.end());
                }
            }
            if (options.method == AlphaMethod::Improved && !options.assume_unbiased_g) bias[i] = mean(a[i]);
        }
        const auto n = static_cast<Eigen::Index>(nfit);
        Eigen::MatrixXd w(n, n);
        Eigen::VectorXd u(n);
        for (std::size_t i = 0; i < nfit; ++i) {
            u[static_cast<Eigen::Index>(i)] = sample_cov(a[i], c);  // b_f = 0
            for (std::size_t j = 0; j <= i; ++j) {
                const double v = sample_cov(a[i], a[j]) + bias[i] * bias[j];
                w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
                w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
            }
        }
        out.alpha = pinv_solve(w, u, kDegenerateRatio * sample_var(c));
    }

    double total = 0.0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t m = per_fitter[0][f].heldout_f.size();
        double fold_value = 0.0;
        for (std::size_t i = 0; i < nfit; ++i) fold_value += out.alpha[i] * per_fitter[i][f].ghat;
        double residual = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double r = per_fitter[0][f].heldout_f[j];
            for (std::size_t i = 0; i < nfit; ++i) r -= out.alpha[i] * per_fitter[i][f].heldout_g[j];
            residual += r;
        }
        total += fold_value + residual / static_cast<double>(m);
    }
    out.estimate = total / static_cast<double>(k);
    return out;
}

double fit_alone(const DataSet& data, const FitterSpec& spec, const Distribution& p, const MeanMode& mean_mode)
{
    data.validate();
    const FitModel model = train(spec, data.points, data.values, fit_box(spec, p));
    return fit_mean(model, p, mean_mode, kFitAloneStream);
}

EstimateReport stackmc_estimate(const DataSet& data, const FoldPartition& partition, const FitterSpec& spec,
                                const Distribution& p, const AlphaOptions& alpha, const MeanMode& mean_mode)
{
    return stack_report(data, partition, std::span<const FitterSpec>(&spec, 1), p, alpha, mean_mode);
}

EstimateReport stackmc_multi(const DataSet& data, const FoldPartition& partition, std::span<const FitterSpec> specs,
                             const Distribution& p, const AlphaOptions& alpha, const MeanMode& mean_mode)
{
    return stack_report(data, partition, specs, p, alpha, mean_mode);
}

EstimateReport stackmc_quasimc(const DataSet& data, std::size_t folds, std::span<const FitterSpec> specs,
                               const Distribution& p, std::size_t n_repeats, RngStream& rng,
                               const MeanMode& mean_mode, const AlphaOptions& alpha)
{
    if (n_repeats < 1) throw std::invalid_argument("stackmc_quasimc: n_repeats must be at least 1");
    if (folds < 2 || data.size() < folds) {
        throw std::invalid_argument("stackmc_quasimc: need N >= K >= 2");
    }
    EstimateReport report;
    std::vector<double> alpha_sum;
    for (std::size_t r = 0; r < n_repeats; ++r) {
        const FoldPartition partition = make_bootstrap_partition(data.size(), folds, rng);
        MeanMode mode = mean_mode;
        mode.seed = derive_seed(mean_mode.seed, r);
        EstimateReport one = stack_report(data, partition, specs, p, alpha, mode);
        report.repeat_estimates.push_back(one.estimate);
        if (alpha_sum.empty()) alpha_sum.assign(one.alpha.size(), 0.0);
        for (std::size_t i = 0; i < one.alpha.size(); ++i) alpha_sum[i] += one.alpha[i];
        if (r + 1 == n_repeats) {
            report.fold_results = std::move(one.fold_results);
            report.mc_baseline = one.mc_baseline;
        }
    }
    report.estimate = mean(report.repeat_estimates);
    for (double& a : alpha_sum) a /= static_cast<double>(n_repeats);
    report.alpha = std::move(alpha_sum);
    report.method = (alpha.fixed ? std::string("fixed") : to_string(alpha.method)) + "+bootstrap";
    return report;
}

EstimateReport stackmc_importance(const DataSet& data, const FoldPartition& partition,
                                  std::span<const FitterSpec> specs, const Distribution& q, std::size_t n_mean,
                                  std::uint64_t mean_seed, const AlphaOptions& alpha)
{
    if (!data.weights) throw std::invalid_argument("stackmc_importance: data has no importance weights");
    data.validate();
    DataSet scaled{data.points, data.values, std::nullopt};
    for (std::size_t i = 0; i < scaled.values.size(); ++i) scaled.values[i] *= (*data.weights)[i];
    EstimateReport report = stack_report(scaled, partition, specs, q, alpha, MeanMode::monte_carlo(n_mean, mean_seed));
    report.method += "+importance";
    return report;
}

}  // namespace stackmc
