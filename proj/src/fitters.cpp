#include "stackmc/fitters.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stackmc {

namespace {

constexpr double kPhase = -std::numbers::pi;

double omega(const FitterSpec& spec, int harmonic)
{
    return spec.frequency == FourierFrequency::Periodic ? 2.0 * std::numbers::pi * harmonic
                                                        : static_cast<double>(harmonic);
}

Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& phi, const Eigen::VectorXd& y, double ridge)
{
    const Eigen::Index p = phi.cols();
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(1e-10);
    if (ridge > 0.0) {
        Eigen::MatrixXd a(phi.rows() + p, p);
        a << phi, std::sqrt(ridge) * Eigen::MatrixXd::Identity(p, p);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(phi.rows() + p);
        b.head(phi.rows()) = y;
        cod.compute(a);
        return cod.solve(b);
    }
    cod.compute(phi);
    return cod.solve(y);
}

}  // namespace

std::string to_string(FitterKind kind)
{
    switch (kind) {
    case FitterKind::Linear: return "linear";
    case FitterKind::Poly3: return "poly3";
    case FitterKind::Fourier: return "fourier";
    case FitterKind::Walsh: return "walsh";
    }
    return "unknown";
}

FitterKind fitter_kind_from_string(const std::string& name)
{
    for (auto k : {FitterKind::Linear, FitterKind::Poly3, FitterKind::Fourier, FitterKind::Walsh}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown fitter kind '" + name + "' (expected linear, poly3, fourier or walsh)");
}

void FitterSpec::validate() const
{
    if (kind == FitterKind::Fourier && harmonics < 1) {
        throw std::invalid_argument("Fourier fitter needs at least one harmonic");
    }
    if (kind == FitterKind::Walsh && (max_order < 1 || max_order > 2)) {
        throw std::invalid_argument("Walsh fitter max_order must be 1 or 2");
    }
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
        throw std::invalid_argument("fitter ridge must be a finite nonnegative number");
    }
}

std::size_t FitterSpec::feature_count(std::size_t dim) const
{
    switch (kind) {
    case FitterKind::Linear: return 1 + dim;
    case FitterKind::Poly3: return 1 + 3 * dim;
    case FitterKind::Fourier: return 1 + 2 * static_cast<std::size_t>(harmonics) * dim;
    case FitterKind::Walsh: return 1 + dim + (max_order >= 2 ? dim * (dim - 1) / 2 : 0);
    }
    return 0;
}

std::string FitterSpec::label() const { return to_string(kind); }

FitModel::FitModel(FitterSpec spec, std::size_t dim, std::vector<double> beta, Box box)
    : spec_(spec), dim_(dim), beta_(std::move(beta)), box_(std::move(box))
{
    spec_.validate();
    if (dim_ == 0) throw std::invalid_argument("FitModel: dimension must be at least 1");
    if (beta_.size() != spec_.feature_count(dim_)) {
        throw std::invalid_argument("FitModel: expected " + std::to_string(spec_.feature_count(dim_)) +
                                    " coefficients, got " + std::to_string(beta_.size()));
    }
    if (spec_.kind == FitterKind::Fourier && box_.dim() != dim_) {
        throw std::invalid_argument("FitModel: Fourier model needs a reference box of matching dimension");
    }
}

void FitModel::features(Point x, std::span<double> out) const
{
    if (x.size() != dim_) {
        throw std::invalid_argument("FitModel: point dimension " + std::to_string(x.size()) +
                                    " does not match model dimension " + std::to_string(dim_));
    }
    std::size_t k = 0;
    out[k++] = 1.0;
    switch (spec_.kind) {
    case FitterKind::Linear:
        for (double v : x) out[k++] = v;
        break;
    case FitterKind::Poly3:
        for (double v : x) {
            out[k++] = v;
            out[k++] = v * v;
            out[k++] = v * v * v;
        }
        break;
    case FitterKind::Fourier:
        for (std::size_t i = 0; i < dim_; ++i) {
            const double u = (x[i] - box_.lo[i]) / (box_.hi[i] - box_.lo[i]);
            for (int j = 1; j <= spec_.harmonics; ++j) {
                const double arg = omega(spec_, j) * u + kPhase;
                out[k++] = std::cos(arg);
                out[k++] = std::sin(arg);
            }
        }
        break;
    case FitterKind::Walsh:
        for (double v : x) out[k++] = v;
        if (spec_.max_order >= 2) {
            for (std::size_t i = 0; i < dim_; ++i) {
                for (std::size_t j = i + 1; j < dim_; ++j) out[k++] = x[i] * x[j];
            }
        }
        break;
    }
}

double FitModel::predict(Point x) const
{
    std::vector<double> phi(beta_.size());
    features(x, phi);
    double sum = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) sum += phi[k] * beta_[k];
    return sum;
}

std::vector<double> FitModel::predict(const PointSet& x) const
{
    std::vector<double> out(x.size());
    std::vector<double> phi(beta_.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        features(x[i], phi);
        double sum = 0.0;
        for (std::size_t k = 0; k < phi.size(); ++k) sum += phi[k] * beta_[k];
        out[i] = sum;
    }
    return out;
}

FitModel train(const FitterSpec& spec, const PointSet& x, std::span<const double> y, const Box& box)
{
    spec.validate();
    if (x.size() != y.size()) {
        throw std::invalid_argument("train: " + std::to_string(x.size()) + " points but " +
                                    std::to_string(y.size()) + " targets");
    }
    if (x.empty()) throw std::invalid_argument("train: no training data");

    const std::size_t p = spec.feature_count(x.dim());
    // Zero-coefficient model, used only to evaluate the feature map.
    FitModel shape(spec, x.dim(), std::vector<double>(p, 0.0), box);

    Eigen::MatrixXd phi(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(p));
    std::vector<double> row(p);
    for (std::size_t i = 0; i < x.size(); ++i) {
        shape.features(x[i], row);
        for (std::size_t k = 0; k < p; ++k) phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
    }
    Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));

    Eigen::VectorXd beta = solve_least_squares(phi, target, spec.ridge);
    if (!beta.allFinite()) {
        const double fallback = 1e-10 * phi.squaredNorm() / static_cast<double>(p);
        beta = solve_least_squares(phi, target, std::max(fallback, 1e-300));
        if (!beta.allFinite()) throw std::runtime_error("train: least-squares solve produced non-finite coefficients");
    }
    return FitModel(spec, x.dim(), std::vector<double>(beta.data(), beta.data() + beta.size()), box);
}

bool has_analytic_mean(const FitterSpec& spec, const Distribution& p)
{
    switch (spec.kind) {
    case FitterKind::Linear:
    case FitterKind::Poly3: return p.is<UniformBox>() || p.is<GaussianIID>() || p.is<ProductQuadratic>();
    case FitterKind::Fourier: return p.is<UniformBox>() || p.is<GaussianIID>();
    case FitterKind::Walsh: return p.is<UniformBits>();
    }
    return false;
}

double analytic_mean(const FitModel& model, const Distribution& p)
{
    const FitterSpec& spec = model.spec();
    if (!has_analytic_mean(spec, p)) {
        throw std::invalid_argument("analytic_mean: no closed form for a " + spec.label() + " fit under " + p.name() +
                                    "; use mc_mean");
    }
    if (p.dim() != model.dim()) throw std::invalid_argument("analytic_mean: dimension mismatch");

    const auto& beta = model.beta();
    if (spec.kind == FitterKind::Walsh) return beta[0];

    const MomentTable moments(p, spec.kind == FitterKind::Fourier ? model.box() : Box{});
    double sum = beta[0];
    std::size_t k = 1;
    for (std::size_t i = 0; i < model.dim(); ++i) {
        switch (spec.kind) {
        case FitterKind::Linear: sum += beta[k++] * moments.raw(i, 1); break;
        case FitterKind::Poly3:
            for (int order = 1; order <= 3; ++order) sum += beta[k++] * moments.raw(i, order);
            break;
        case FitterKind::Fourier:
            for (int j = 1; j <= spec.harmonics; ++j) {
                const double w = omega(spec, j);
                sum += beta[k++] * moments.cos_mean(i, w, kPhase);
                sum += beta[k++] * moments.sin_mean(i, w, kPhase);
            }
            break;
        case FitterKind::Walsh: break;
        }
    }
    return sum;
}

double mc_mean(const FitModel& model, const Distribution& q, std::size_t n_mean, RngStream& rng)
{
    if (n_mean == 0) throw std::invalid_argument("mc_mean: n_mean must be at least 1");
    if (q.dim() != model.dim()) throw std::invalid_argument("mc_mean: dimension mismatch");
    std::vector<double> x(q.dim());
    double sum = 0.0;
    for (std::size_t j = 0; j < n_mean; ++j) {
        q.sample(rng, x);
        sum += model.predict(x);
    }
    return sum / static_cast<double>(n_mean);
}

}  // namespace stackmc
