#pragma once

#include "stackmc/distribution.hpp"
#include "stackmc/moments.hpp"
#include "stackmc/rng.hpp"
#include "stackmc/types.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace stackmc {

enum class FitterKind { Linear, Poly3, Fourier, Walsh };

// Frequency convention of the Fourier basis on the normalized coordinate u:
// Periodic uses cos/sin(2 pi j u - pi), Literal uses cos/sin(j u - pi).
enum class FourierFrequency { Periodic, Literal };

struct FitterSpec {
    FitterKind kind = FitterKind::Linear;
    int harmonics = 6;
    FourierFrequency frequency = FourierFrequency::Periodic;
    int max_order = 2;
    double ridge = 0.0;

    static FitterSpec linear() { return {FitterKind::Linear}; }
    static FitterSpec poly3() { return {FitterKind::Poly3}; }
    static FitterSpec fourier(int harmonics = 6, FourierFrequency freq = FourierFrequency::Periodic)
    {
        return {FitterKind::Fourier, harmonics, freq};
    }
    static FitterSpec walsh(int max_order = 2) { return {FitterKind::Walsh, 6, FourierFrequency::Periodic, max_order}; }

    // Throws std::invalid_argument on out-of-range parameters.
    void validate() const;

    std::size_t feature_count(std::size_t dim) const;

    // Short lowercase name ("linear", "poly3", "fourier", "walsh").
    std::string label() const;

    bool operator==(const FitterSpec&) const = default;
};

std::string to_string(FitterKind kind);
FitterKind fitter_kind_from_string(const std::string& name);

// A trained least-squares surrogate g(x) = phi(x) . beta.
class FitModel {
public:
    // `box` is required for Fourier models and ignored otherwise.
    FitModel(FitterSpec spec, std::size_t dim, std::vector<double> beta, Box box = {});

    const FitterSpec& spec() const { return spec_; }
    std::size_t dim() const { return dim_; }
    const std::vector<double>& beta() const { return beta_; }
    const Box& box() const { return box_; }

    // Writes phi(x) into `out` (size feature_count).
    void features(Point x, std::span<double> out) const;

    double predict(Point x) const;
    std::vector<double> predict(const PointSet& x) const;

private:
    FitterSpec spec_;
    std::size_t dim_;
    std::vector<double> beta_;
    Box box_;
};

// Least-squares fit of y on the spec's feature map, minimizing
// |Phi beta - y|^2 + ridge |beta|^2. Rank-deficient and underdetermined
// systems yield the minimum-norm solution. Fourier fits need `box`.
FitModel train(const FitterSpec& spec, const PointSet& x, std::span<const double> y, const Box& box = {});

inline double predict(const FitModel& model, Point x) { return model.predict(x); }

// True if analytic_mean supports this (fitter, distribution) pair.
bool has_analytic_mean(const FitterSpec& spec, const Distribution& p);

// Exact E_p[g]. Throws std::invalid_argument for unsupported pairs; use
// mc_mean for those.
double analytic_mean(const FitModel& model, const Distribution& p);

// Monte Carlo estimate of E_q[g] from n_mean draws of q.
double mc_mean(const FitModel& model, const Distribution& q, std::size_t n_mean, RngStream& rng);

}  // namespace stackmc
