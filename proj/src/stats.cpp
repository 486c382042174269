#include "stackmc/stats.hpp"

#include <stdexcept>

namespace stackmc {

double mean(std::span<const double> a)
{
    if (a.empty()) {
        throw std::invalid_argument("mean: empty input");
    }
    double sum = 0.0;
    for (double v : a) sum += v;
    return sum / static_cast<double>(a.size());
}

double sample_cov(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("sample_cov: length mismatch");
    }
    if (a.size() < 2) {
        throw std::invalid_argument("sample_cov: need at least two observations");
    }
    const double ma = mean(a);
    const double mb = mean(b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += (a[i] - ma) * (b[i] - mb);
    }
    return sum / static_cast<double>(a.size() - 1);
}

}  // namespace stackmc
