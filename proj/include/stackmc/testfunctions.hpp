#pragma once

#include "stackmc/distribution.hpp"
#include "stackmc/types.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace stackmc {

enum class FunctionKind { Quadratic1D, Rosenbrock, FourPeaks };

// Benchmark integrands.
//   Quadratic1D: (x - 0.2)^2.
//   Rosenbrock:  sum_{i<d} (1 - x_i)^2 + 100 (x_{i+1} - x_i^2)^2.
//   FourPeaks:   on bits (+1 -> 1, -1 -> 0), with o = leading ones and
//                z = trailing zeros: max(o, z) + (d if o > T and z > T).
class TestFunction {
public:
    static TestFunction quadratic1d();
    static TestFunction rosenbrock(std::size_t dim);
    // threshold < 0 selects round(0.1 d).
    static TestFunction four_peaks(std::size_t dim, int threshold = -1);

    FunctionKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    int threshold() const { return threshold_; }
    std::string name() const;

    double operator()(Point x) const { return evaluate(x); }
    double evaluate(Point x) const;
    std::vector<double> evaluate(const PointSet& x) const;

private:
    TestFunction(FunctionKind kind, std::size_t dim, int threshold) : kind_(kind), dim_(dim), threshold_(threshold) {}

    FunctionKind kind_;
    std::size_t dim_;
    int threshold_;
};

// Largest bit-string length reference_mean will enumerate.
constexpr std::size_t kMaxEnumerationDim = 24;

// Exact E_p[f]: closed form from raw moments for the continuous functions,
// exhaustive enumeration for FourPeaks under UniformBits.
double reference_mean(const TestFunction& fn, const Distribution& p);

}  // namespace stackmc
