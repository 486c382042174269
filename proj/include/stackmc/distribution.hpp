#pragma once

#include "stackmc/rng.hpp"
#include "stackmc/types.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace stackmc {

struct UniformBox {
    std::vector<double> lo;
    std::vector<double> hi;

    bool operator==(const UniformBox&) const = default;
};

struct GaussianIID {
    double mu = 0.0;
    double sigma = 1.0;
    std::size_t dim = 1;

    bool operator==(const GaussianIID&) const = default;
};

// Uniform over {-1, +1}^dim.
struct UniformBits {
    std::size_t dim = 1;

    bool operator==(const UniformBits&) const = default;
};

// Product density on a box that grows quadratically towards the faces:
// per dimension (12/7)(1/w)(s^2 + 1/4), with w = hi - lo and
// s = 2(x - lo)/w - 1 in [-1, 1].
struct ProductQuadratic {
    std::vector<double> lo;
    std::vector<double> hi;

    bool operator==(const ProductQuadratic&) const = default;
};

// Normalized probability measure with sampling and density evaluation.
// Immutable once constructed; the factories validate parameters.
class Distribution {
public:
    using Params = std::variant<UniformBox, GaussianIID, UniformBits, ProductQuadratic>;

    static Distribution uniform_box(std::vector<double> lo, std::vector<double> hi);
    static Distribution uniform_box(double lo, double hi, std::size_t dim);
    static Distribution gaussian(double mu, double sigma, std::size_t dim);
    static Distribution uniform_bits(std::size_t dim);
    static Distribution product_quadratic(std::vector<double> lo, std::vector<double> hi);
    static Distribution product_quadratic(double lo, double hi, std::size_t dim);

    const Params& params() const { return params_; }
    std::string name() const;
    std::size_t dim() const;
    bool continuous() const { return !std::holds_alternative<UniformBits>(params_); }

    template <typename T>
    bool is() const { return std::holds_alternative<T>(params_); }
    template <typename T>
    const T& as() const { return std::get<T>(params_); }

    double density(Point x) const;

    // Marginal density of coordinate `axis` (all marginals are independent).
    double marginal_density(std::size_t axis, double x) const;

    // Inverse marginal CDF for continuous kinds; u in (0, 1).
    double quantile(std::size_t axis, double u) const;

    void sample(RngStream& rng, std::span<double> out) const;
    PointSet sample(RngStream& rng, std::size_t n) const;

    // Support of coordinate `axis` (infinite for the Gaussian).
    std::pair<double, double> support(std::size_t axis) const;

    bool operator==(const Distribution&) const = default;

private:
    explicit Distribution(Params p) : params_(std::move(p)) {}

    Params params_;
};

// Standard normal inverse CDF.
double normal_quantile(double u);

// Standard normal CDF.
double normal_cdf(double x);

}  // namespace stackmc
