#include "stackmc/samplers.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace stackmc {

namespace {

constexpr std::size_t kMaxHaltonDim = 64;
constexpr int kScrambleDepth = 32;

const std::vector<unsigned>& primes()
{
    static const std::vector<unsigned> table = [] {
        std::vector<unsigned> out;
        for (unsigned c = 2; out.size() < kMaxHaltonDim; ++c) {
            bool is_prime = true;
            for (unsigned p : out) {
                if (p * p > c) break;
                if (c % p == 0) {
                    is_prime = false;
                    break;
                }
            }
            if (is_prime) out.push_back(c);
        }
        return out;
    }();
    return table;
}

// Digit permutations for one base: perms[j] permutes digit position j.
std::vector<std::vector<unsigned>> digit_permutations(unsigned base, RngStream rng)
{
    std::vector<std::vector<unsigned>> perms(kScrambleDepth, std::vector<unsigned>(base));
    for (auto& perm : perms) {
        std::iota(perm.begin(), perm.end(), 0u);
        rng.shuffle(std::span<unsigned>(perm));
    }
    return perms;
}

double radical_inverse(std::uint64_t index, unsigned base, const std::vector<std::vector<unsigned>>* perms)
{
    std::array<unsigned, kScrambleDepth> digits{};
    for (int j = 0; j < kScrambleDepth && index > 0; ++j) {
        digits[j] = static_cast<unsigned>(index % base);
        index /= base;
    }
    const int depth = perms ? kScrambleDepth : [&] {
        int top = kScrambleDepth;
        while (top > 0 && digits[top - 1] == 0) --top;
        return top;
    }();
    double v = 0.0;
    for (int j = depth - 1; j >= 0; --j) {
        unsigned digit = perms ? (*perms)[j][digits[j]] : digits[j];
        v = (v + digit) / base;
    }
    return v;
}

}  // namespace

PointSet simple_sample(const Distribution& p, std::size_t n, RngStream& rng)
{
    if (n == 0) throw std::invalid_argument("simple_sample: n must be at least 1");
    return p.sample(rng, n);
}

PointSet latin_hypercube(std::size_t n, std::size_t d, RngStream& rng)
{
    if (n == 0 || d == 0) throw std::invalid_argument("latin_hypercube: n and d must be at least 1");
    PointSet pts(n, d);
    std::vector<std::size_t> strata(n);
    const double width = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) {
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        rng.shuffle(std::span<std::size_t>(strata));
        for (std::size_t i = 0; i < n; ++i) {
            double u = (static_cast<double>(strata[i]) + rng.uniform_open()) * width;
            // Keep the point inside its stratum after rounding.
            const double upper = static_cast<double>(strata[i] + 1) * width;
            if (u >= upper) u = std::nextafter(upper, 0.0);
            pts.row(i)[j] = u;
        }
    }
    return pts;
}

std::size_t halton_max_dim() { return kMaxHaltonDim; }

PointSet halton(std::size_t n, std::size_t d, std::optional<std::uint64_t> scramble_seed, std::uint64_t burn_in)
{
    if (n == 0 || d == 0) throw std::invalid_argument("halton: n and d must be at least 1");
    if (d > kMaxHaltonDim) {
        throw std::invalid_argument("halton: dimension " + std::to_string(d) + " exceeds the " +
                                    std::to_string(kMaxHaltonDim) + " supported prime bases");
    }
    PointSet pts(n, d);
    for (std::size_t j = 0; j < d; ++j) {
        const unsigned base = primes()[j];
        std::vector<std::vector<unsigned>> perms;
        if (scramble_seed) perms = digit_permutations(base, split(*scramble_seed, j));
        for (std::size_t i = 0; i < n; ++i) {
            double v = radical_inverse(burn_in + 1 + i, base, scramble_seed ? &perms : nullptr);
            if (v >= 1.0) v = std::nextafter(1.0, 0.0);
            if (v <= 0.0) v = 0x1.0p-60;
            pts.row(i)[j] = v;
        }
    }
    return pts;
}

PointSet transform_to(const PointSet& unit_points, const Distribution& p)
{
    if (!p.continuous()) {
        throw std::invalid_argument("transform_to: unsupported distribution kind " + p.name());
    }
    if (unit_points.dim() != p.dim()) {
        throw std::invalid_argument("transform_to: point dimension does not match distribution");
    }
    PointSet out(unit_points.size(), unit_points.dim());
    for (std::size_t i = 0; i < unit_points.size(); ++i) {
        auto src = unit_points[i];
        auto dst = out.row(i);
        for (std::size_t j = 0; j < src.size(); ++j) dst[j] = p.quantile(j, src[j]);
    }
    return out;
}

DataSet importance_sample(const Distribution& p, const Distribution& q, std::size_t n, RngStream& rng)
{
    if (p.dim() != q.dim()) throw std::invalid_argument("importance_sample: p and q dimensions differ");
    if (n == 0) throw std::invalid_argument("importance_sample: n must be at least 1");
    DataSet data{q.sample(rng, n), std::vector<double>(n, 0.0), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double qd = q.density(data.points[i]);
        if (!(qd > 0.0)) {
            throw std::runtime_error("importance_sample: q has zero density at a drawn point");
        }
        (*data.weights)[i] = p.density(data.points[i]) / qd;
    }
    return data;
}

}  // namespace stackmc
