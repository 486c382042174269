#include "doctest.h"

#include "stackmc/samplers.hpp"
#include "stackmc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace stackmc;

namespace {

// Radical inverse of i in base b, computed digit by digit.
double radical_inverse(std::uint64_t i, std::uint64_t b)
{
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(b);
        r += f * static_cast<double>(i % b);
        i /= b;
    }
    return r;
}

// Kolmogorov distance of the sample to U(0, 1).
double ks_uniform(std::vector<double> u)
{
    std::sort(u.begin(), u.end());
    double d = 0.0;
    const double n = static_cast<double>(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        d = std::max({d, std::abs(u[i] - i / n), std::abs(u[i] - (i + 1) / n)});
    }
    return d;
}

}  // namespace

TEST_CASE("Latin hypercube puts one point in every stratum of every axis")
{
    RngStream rng(1);
    for (std::size_t n : {1u, 2u, 10u, 101u}) {
        const PointSet x = latin_hypercube(n, 4, rng);
        REQUIRE(x.size() == n);
        for (std::size_t a = 0; a < 4; ++a) {
            std::vector<int> hit(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE(x[i][a] >= 0.0);
                REQUIRE(x[i][a] < 1.0);
                ++hit[static_cast<std::size_t>(x[i][a] * n)];
            }
            for (int h : hit) CHECK(h == 1);
        }
    }
}

TEST_CASE("unscrambled Halton matches the radical inverse")
{
    const PointSet h = halton(3, 2);
    CHECK(h[0][0] == 0.5);
    CHECK(h[1][0] == 0.25);
    CHECK(h[2][0] == 0.75);
    CHECK(h[0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(h[1][1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(h[2][1] == doctest::Approx(1.0 / 9.0).epsilon(1e-15));

    const PointSet burned = halton(20, 5, std::nullopt, 100);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11};
    for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t a = 0; a < 5; ++a) {
            CHECK(burned[i][a] == doctest::Approx(radical_inverse(101 + i, primes[a])).epsilon(1e-14));
        }
    }
}

TEST_CASE("scrambled Halton stays uniform and depends on the seed")
{
    const std::size_t n = 4096;
    const PointSet a = halton(n, 8, 77u);
    const PointSet b = halton(n, 8, 78u);
    const PointSet a2 = halton(n, 8, 77u);
    CHECK(a.data() == a2.data());
    CHECK(a.data() != b.data());
    for (std::size_t ax = 0; ax < 8; ++ax) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = a[i][ax];
            REQUIRE(col[i] > 0.0);
            REQUIRE(col[i] < 1.0);
        }
        CHECK(ks_uniform(col) < 0.02);
    }
}

TEST_CASE("Halton rejects too many dimensions")
{
    CHECK_THROWS_AS(halton(4, halton_max_dim() + 1), std::invalid_argument);
}

TEST_CASE("transform_to maps the unit cube through inverse CDFs")
{
    PointSet u(2);
    const double r[] = {0.25, 0.5};
    u.push_back(r);
    const PointSet box = transform_to(u, Distribution::uniform_box({-3.0, 0.0}, {3.0, 2.0}));
    CHECK(box[0][0] == doctest::Approx(-1.5));
    CHECK(box[0][1] == doctest::Approx(1.0));
    const PointSet g = transform_to(u, Distribution::gaussian(0.0, 2.0, 2));
    CHECK(g[0][0] == doctest::Approx(2.0 * -0.6744897501960817));
    CHECK(g[0][1] == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS(transform_to(u, Distribution::uniform_bits(2)));
}

TEST_CASE("simple samples have the target mean")
{
    RngStream rng(4);
    const PointSet x = simple_sample(Distribution::gaussian(1.0, 2.0, 3), 50000, rng);
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i][2];
    CHECK(std::abs(s / 50000 - 1.0) < 5 * 2.0 / std::sqrt(50000.0));
}

TEST_CASE("importance weights are likelihood ratios with mean one")
{
    RngStream rng(5);
    const auto p = Distribution::uniform_box(-3.0, 3.0, 2);
    const auto q = Distribution::product_quadratic(-3.0, 3.0, 2);
    const DataSet d = importance_sample(p, q, 200000, rng);
    REQUIRE(d.weights);
    for (std::size_t i = 0; i < 10; ++i) CHECK((*d.weights)[i] == doctest::Approx(p.density(d.points[i]) / q.density(d.points[i])));
    const double m = mean(*d.weights);
    CHECK(std::abs(m - 1.0) < 5 * std::sqrt(sample_var(*d.weights) / 200000));
    for (double v : d.values) CHECK(v == 0.0);
}
