#include "stackmc/testfunctions.hpp"

#include "stackmc/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace stackmc {

TestFunction TestFunction::quadratic1d() { return {FunctionKind::Quadratic1D, 1, 0}; }

TestFunction TestFunction::rosenbrock(std::size_t dim)
{
    if (dim < 2) throw std::invalid_argument("Rosenbrock needs dimension >= 2");
    return {FunctionKind::Rosenbrock, dim, 0};
}

TestFunction TestFunction::four_peaks(std::size_t dim, int threshold)
{
    if (dim < 1) throw std::invalid_argument("FourPeaks needs dimension >= 1");
    if (threshold < 0) threshold = static_cast<int>(std::lround(0.1 * static_cast<double>(dim)));
    if (threshold >= static_cast<int>(dim)) throw std::invalid_argument("FourPeaks threshold must lie in [0, d)");
    return {FunctionKind::FourPeaks, dim, threshold};
}

std::string TestFunction::name() const
{
    switch (kind_) {
    case FunctionKind::Quadratic1D: return "quadratic1d";
    case FunctionKind::Rosenbrock: return "rosenbrock";
    case FunctionKind::FourPeaks: return "four_peaks";
    }
    return "unknown";
}

double TestFunction::evaluate(Point x) const
{
    if (x.size() != dim_) {
        throw std::invalid_argument(name() + ": expected dimension " + std::to_string(dim_) + ", got " +
                                    std::to_string(x.size()));
    }
    switch (kind_) {
    case FunctionKind::Quadratic1D: {
        const double t = x[0] - 0.2;
        return t * t;
    }
    case FunctionKind::Rosenbrock: {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < dim_; ++i) {
            const double a = 1.0 - x[i];
            const double b = x[i + 1] - x[i] * x[i];
            sum += a * a + 100.0 * b * b;
        }
        return sum;
    }
    case FunctionKind::FourPeaks: {
        std::size_t ones = 0;
        while (ones < dim_ && x[ones] > 0.0) ++ones;
        std::size_t zeros = 0;
        while (zeros < dim_ && x[dim_ - 1 - zeros] < 0.0) ++zeros;
        const auto t = static_cast<std::size_t>(threshold_);
        const double bonus = (ones > t && zeros > t) ? static_cast<double>(dim_) : 0.0;
        return static_cast<double>(std::max(ones, zeros)) + bonus;
    }
    }
    return 0.0;
}

std::vector<double> TestFunction::evaluate(const PointSet& x) const
{
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = evaluate(x[i]);
    return out;
}

double reference_mean(const TestFunction& fn, const Distribution& p)
{
    if (p.dim() != fn.dim()) throw std::invalid_argument("reference_mean: dimension mismatch");
    switch (fn.kind()) {
    case FunctionKind::Quadratic1D: {
        if (!p.continuous()) break;
        const MomentTable m(p);
        return m.raw(0, 2) - 0.4 * m.raw(0, 1) + 0.04;
    }
    case FunctionKind::Rosenbrock: {
        if (!p.continuous()) break;
        const MomentTable m(p);
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < fn.dim(); ++i) {
            // E(1 - x_i)^2 + 100 E(x_{i+1}^2 - 2 x_{i+1} x_i^2 + x_i^4), axes independent.
            sum += 1.0 - 2.0 * m.raw(i, 1) + m.raw(i, 2);
            sum += 100.0 * (m.raw(i + 1, 2) - 2.0 * m.raw(i + 1, 1) * m.raw(i, 2) + m.raw(i, 4));
        }
        return sum;
    }
    case FunctionKind::FourPeaks: {
        if (!p.is<UniformBits>()) break;
        const std::size_t d = fn.dim();
        if (d > kMaxEnumerationDim) {
            throw std::invalid_argument("reference_mean: enumeration limited to d <= " +
                                        std::to_string(kMaxEnumerationDim));
        }
        std::vector<double> x(d);
        double sum = 0.0;
        const std::uint64_t count = std::uint64_t{1} << d;
        for (std::uint64_t code = 0; code < count; ++code) {
            for (std::size_t i = 0; i < d; ++i) x[i] = ((code >> i) & 1u) ? 1.0 : -1.0;
            sum += fn.evaluate(x);
        }
        return sum / static_cast<double>(count);
    }
    }
    throw std::invalid_argument("reference_mean: unsupported pair (" + fn.name() + ", " + p.name() + ")");
}

}  // namespace stackmc
