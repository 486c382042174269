#include "stackmc/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stackmc {

Box reference_box(const Distribution& p)
{
    if (p.is<UniformBox>()) {
        const auto& b = p.as<UniformBox>();
        return {b.lo, b.hi};
    }
    if (p.is<ProductQuadratic>()) {
        const auto& q = p.as<ProductQuadratic>();
        return {q.lo, q.hi};
    }
    if (p.is<GaussianIID>()) {
        const auto& g = p.as<GaussianIID>();
        return {std::vector<double>(g.dim, g.mu - 3.0 * g.sigma), std::vector<double>(g.dim, g.mu + 3.0 * g.sigma)};
    }
    throw std::invalid_argument("reference_box: " + p.name() + " has no continuous reference box");
}

namespace {

double binomial(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

MomentTable::MomentTable(const Distribution& p, Box box)
{
    const std::size_t d = p.dim();
    raw_.resize(d);
    trig_.resize(d);
    if (box.empty() && p.continuous()) box = reference_box(p);
    if (!box.empty() && box.dim() != d) {
        throw std::invalid_argument("MomentTable: box dimension does not match distribution");
    }

    for (std::size_t i = 0; i < d; ++i) {
        auto& m = raw_[i];
        if (p.is<UniformBox>()) {
            const double a = p.as<UniformBox>().lo[i];
            const double b = p.as<UniformBox>().hi[i];
            for (int j = 0; j <= max_order; ++j) {
                m[j] = (std::pow(b, j + 1) - std::pow(a, j + 1)) / ((j + 1) * (b - a));
            }
        } else if (p.is<GaussianIID>()) {
            const auto& g = p.as<GaussianIID>();
            m[0] = 1.0;
            m[1] = g.mu;
            for (int j = 2; j <= max_order; ++j) {
                m[j] = g.mu * m[j - 1] + (j - 1) * g.sigma * g.sigma * m[j - 2];
            }
        } else if (p.is<UniformBits>()) {
            for (int j = 0; j <= max_order; ++j) m[j] = (j % 2 == 0) ? 1.0 : 0.0;
        } else {
            // x = c + h s with s on [-1, 1] under density (6/7)(s^2 + 1/4).
            const auto& q = p.as<ProductQuadratic>();
            const double c = 0.5 * (q.lo[i] + q.hi[i]);
            const double h = 0.5 * (q.hi[i] - q.lo[i]);
            std::array<double, max_order + 1> s{};
            for (int k = 0; k <= max_order; k += 2) {
                s[k] = (6.0 / 7.0) * (2.0 / (k + 3) + 0.5 / (k + 1));
            }
            for (int j = 0; j <= max_order; ++j) {
                double sum = 0.0;
                for (int k = 0; k <= j; ++k) sum += binomial(j, k) * std::pow(c, j - k) * std::pow(h, k) * s[k];
                m[j] = sum;
            }
        }

        if (box.empty()) continue;
        const double width = box.hi[i] - box.lo[i];
        if (p.is<UniformBox>()) {
            const auto& b = p.as<UniformBox>();
            trig_[i] = {TrigKind::Uniform, (b.lo[i] - box.lo[i]) / width, (b.hi[i] - box.lo[i]) / width};
        } else if (p.is<GaussianIID>()) {
            const auto& g = p.as<GaussianIID>();
            trig_[i] = {TrigKind::Normal, (g.mu - box.lo[i]) / width, g.sigma / width};
        }
    }
}

double MomentTable::raw(std::size_t axis, int order) const
{
    if (axis >= raw_.size() || order < 0 || order > max_order) {
        throw std::out_of_range("MomentTable::raw: axis or order out of range");
    }
    return raw_[axis][order];
}

std::pair<double, double> MomentTable::char_mean(std::size_t axis, double omega, double phase) const
{
    if (axis >= trig_.size()) throw std::out_of_range("MomentTable: axis out of range");
    const TrigAxis& t = trig_[axis];
    switch (t.kind) {
    case TrigKind::Uniform: {
        if (omega == 0.0) return {std::cos(phase), std::sin(phase)};
        const double span = t.b - t.a;
        const double hi = omega * t.b + phase;
        const double lo = omega * t.a + phase;
        return {(std::sin(hi) - std::sin(lo)) / (omega * span), (std::cos(lo) - std::cos(hi)) / (omega * span)};
    }
    case TrigKind::Normal: {
        const double damp = std::exp(-0.5 * omega * omega * t.b * t.b);
        const double arg = omega * t.a + phase;
        return {damp * std::cos(arg), damp * std::sin(arg)};
    }
    case TrigKind::None:
        break;
    }
    throw std::invalid_argument("MomentTable: no closed-form trigonometric moments for axis " + std::to_string(axis));
}

double MomentTable::cos_mean(std::size_t axis, double omega, double phase) const
{
    return char_mean(axis, omega, phase).first;
}

double MomentTable::sin_mean(std::size_t axis, double omega, double phase) const
{
    return char_mean(axis, omega, phase).second;
}

}  // namespace stackmc
