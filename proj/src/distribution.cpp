#include "stackmc/distribution.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace stackmc {

namespace {

void check_box(const std::vector<double>& lo, const std::vector<double>& hi, const char* who)
{
    if (lo.empty() || lo.size() != hi.size()) {
        throw std::invalid_argument(std::string(who) + ": lo and hi must be nonempty and the same length");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
            throw std::invalid_argument(std::string(who) + ": require finite lo < hi in every dimension");
        }
    }
}

// CDF of the ProductQuadratic marginal in the s in [-1, 1] coordinate.
double pq_cdf(double s) { return (2.0 / 7.0) * (s * s * s + 1.0) + (3.0 / 14.0) * (s + 1.0); }

double pq_pdf(double s) { return (6.0 / 7.0) * (s * s + 0.25); }

double pq_quantile(double u)
{
    double a = -1.0;
    double b = 1.0;
    double s = 2.0 * u - 1.0;
    for (int it = 0; it < 100; ++it) {
        double r = pq_cdf(s) - u;
        if (r > 0.0) {
            b = s;
        } else {
            a = s;
        }
        if (std::abs(r) < 1e-15) break;
        double next = s - r / pq_pdf(s);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - s) < 1e-13) {
            s = next;
            break;
        }
        s = next;
    }
    return s;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

double normal_quantile(double u)
{
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("normal_quantile: u must lie in (0, 1)");
    }
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

Distribution Distribution::uniform_box(std::vector<double> lo, std::vector<double> hi)
{
    check_box(lo, hi, "UniformBox");
    return Distribution(UniformBox{std::move(lo), std::move(hi)});
}

Distribution Distribution::uniform_box(double lo, double hi, std::size_t dim)
{
    return uniform_box(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

Distribution Distribution::gaussian(double mu, double sigma, std::size_t dim)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
        throw std::invalid_argument("GaussianIID: require finite mu and sigma > 0");
    }
    if (dim == 0) throw std::invalid_argument("GaussianIID: dimension must be at least 1");
    return Distribution(GaussianIID{mu, sigma, dim});
}

Distribution Distribution::uniform_bits(std::size_t dim)
{
    if (dim == 0) throw std::invalid_argument("UniformBits: dimension must be at least 1");
    return Distribution(UniformBits{dim});
}

Distribution Distribution::product_quadratic(std::vector<double> lo, std::vector<double> hi)
{
    check_box(lo, hi, "ProductQuadratic");
    return Distribution(ProductQuadratic{std::move(lo), std::move(hi)});
}

Distribution Distribution::product_quadratic(double lo, double hi, std::size_t dim)
{
    return product_quadratic(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

std::string Distribution::name() const
{
    return std::visit(overloaded{
                          [](const UniformBox&) { return std::string("uniform_box"); },
                          [](const GaussianIID&) { return std::string("gaussian"); },
                          [](const UniformBits&) { return std::string("uniform_bits"); },
                          [](const ProductQuadratic&) { return std::string("product_quadratic"); },
                      },
                      params_);
}

std::size_t Distribution::dim() const
{
    return std::visit(overloaded{
                          [](const UniformBox& b) { return b.lo.size(); },
                          [](const GaussianIID& g) { return g.dim; },
                          [](const UniformBits& b) { return b.dim; },
                          [](const ProductQuadratic& q) { return q.lo.size(); },
                      },
                      params_);
}

double Distribution::marginal_density(std::size_t axis, double x) const
{
    return std::visit(overloaded{
                          [&](const UniformBox& b) {
                              return (x >= b.lo[axis] && x <= b.hi[axis]) ? 1.0 / (b.hi[axis] - b.lo[axis]) : 0.0;
                          },
                          [&](const GaussianIID& g) {
                              double z = (x - g.mu) / g.sigma;
                              return std::exp(-0.5 * z * z) / (g.sigma * std::sqrt(2.0 * std::numbers::pi));
                          },
                          [&](const UniformBits&) { return (x == 1.0 || x == -1.0) ? 0.5 : 0.0; },
                          [&](const ProductQuadratic& q) {
                              if (x < q.lo[axis] || x > q.hi[axis]) return 0.0;
                              double w = q.hi[axis] - q.lo[axis];
                              double s = 2.0 * (x - q.lo[axis]) / w - 1.0;
                              return (12.0 / 7.0) / w * (s * s + 0.25);
                          },
                      },
                      params_);
}

double Distribution::density(Point x) const
{
    if (x.size() != dim()) {
        throw std::invalid_argument("Distribution::density: dimension mismatch");
    }
    double d = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) d *= marginal_density(i, x[i]);
    return d;
}

double Distribution::quantile(std::size_t axis, double u) const
{
    return std::visit(overloaded{
                          [&](const UniformBox& b) { return b.lo[axis] + u * (b.hi[axis] - b.lo[axis]); },
                          [&](const GaussianIID& g) { return g.mu + g.sigma * normal_quantile(u); },
                          [&](const UniformBits&) -> double {
                              throw std::invalid_argument("quantile: UniformBits has no continuous inverse CDF");
                          },
                          [&](const ProductQuadratic& q) {
                              double w = q.hi[axis] - q.lo[axis];
                              return q.lo[axis] + 0.5 * w * (pq_quantile(u) + 1.0);
                          },
                      },
                      params_);
}

void Distribution::sample(RngStream& rng, std::span<double> out) const
{
    if (out.size() != dim()) {
        throw std::invalid_argument("Distribution::sample: output dimension mismatch");
    }
    std::visit(overloaded{
                   [&](const UniformBox& b) {
                       for (std::size_t i = 0; i < out.size(); ++i) {
                           out[i] = b.lo[i] + rng.uniform() * (b.hi[i] - b.lo[i]);
                       }
                   },
                   [&](const GaussianIID& g) {
                       for (double& v : out) v = g.mu + g.sigma * rng.normal();
                   },
                   [&](const UniformBits&) {
                       for (double& v : out) v = (rng.next_u64() >> 63) ? 1.0 : -1.0;
                   },
                   [&](const ProductQuadratic&) {
                       for (std::size_t i = 0; i < out.size(); ++i) out[i] = quantile(i, rng.uniform_open());
                   },
               },
               params_);
}

PointSet Distribution::sample(RngStream& rng, std::size_t n) const
{
    PointSet pts(n, dim());
    for (std::size_t i = 0; i < n; ++i) sample(rng, pts.row(i));
    return pts;
}

std::pair<double, double> Distribution::support(std::size_t axis) const
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(overloaded{
                          [&](const UniformBox& b) { return std::pair{b.lo[axis], b.hi[axis]}; },
                          [&](const GaussianIID&) { return std::pair{-inf, inf}; },
                          [&](const UniformBits&) { return std::pair{-1.0, 1.0}; },
                          [&](const ProductQuadratic& q) { return std::pair{q.lo[axis], q.hi[axis]}; },
                      },
                      params_);
}

}  // namespace stackmc
