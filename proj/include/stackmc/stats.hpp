#pragma once

#include <span>

namespace stackmc {

// Arithmetic mean. Throws std::invalid_argument on empty input.
double mean(std::span<const double> a);

// Unbiased (n - 1) sample covariance. Requires |a| = |b| >= 2.
double sample_cov(std::span<const double> a, std::span<const double> b);

inline double sample_var(std::span<const double> a) { return sample_cov(a, a); }

}  // namespace stackmc
