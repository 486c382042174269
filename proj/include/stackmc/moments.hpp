#pragma once

#include "stackmc/distribution.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace stackmc {

// Axis-aligned box defining the normalized coordinate u = (x - lo)/(hi - lo)
// used by the Fourier basis.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const { return lo.size(); }
    bool empty() const { return lo.empty(); }
};

// Reference box for a continuous distribution: the box itself for bounded
// kinds, [mu - 3 sigma, mu + 3 sigma] per axis for the Gaussian.
Box reference_box(const Distribution& p);

// Per-axis raw moments E[x^j], j = 0..6, and trigonometric moments of the
// normalized coordinate, for one distribution.
class MomentTable {
public:
    static constexpr int max_order = 6;

    // `box` fixes the normalized coordinate for the trigonometric moments;
    // when empty, reference_box(p) is used (continuous kinds only).
    explicit MomentTable(const Distribution& p, Box box = {});

    std::size_t dim() const { return raw_.size(); }

    double raw(std::size_t axis, int order) const;

    // E[cos(omega u + phase)] and E[sin(omega u + phase)] along `axis`.
    // Throws std::invalid_argument where no closed form is implemented.
    double cos_mean(std::size_t axis, double omega, double phase) const;
    double sin_mean(std::size_t axis, double omega, double phase) const;

private:
    enum class TrigKind { Uniform, Normal, None };

    struct TrigAxis {
        TrigKind kind = TrigKind::None;
        double a = 0.0;  // Uniform: u-interval start. Normal: u mean.
        double b = 0.0;  // Uniform: u-interval end.   Normal: u standard deviation.
    };

    // E[exp(i (omega u + phase))] as (real, imag).
    std::pair<double, double> char_mean(std::size_t axis, double omega, double phase) const;

    std::vector<std::array<double, max_order + 1>> raw_;
    std::vector<TrigAxis> trig_;
};

}  // namespace stackmc
