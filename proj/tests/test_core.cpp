#include "doctest.h"

#include "stackmc/rng.hpp"
#include "stackmc/stats.hpp"
#include "stackmc/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numeric>
#include <set>
#include <vector>

using namespace stackmc;

TEST_CASE("rng streams are reproducible and splits are order independent")
{
    RngStream a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream fresh(42);
    const RngStream child = fresh.split(7);
    for (int i = 0; i < 10; ++i) fresh.next_u64();
    RngStream c1 = fresh.split(7);
    RngStream c2 = child;
    CHECK(c1.next_u64() == c2.next_u64());
    CHECK(derive_seed(42, 7) != derive_seed(42, 8));
    CHECK(derive_seed(42, 7) != derive_seed(43, 7));
}

TEST_CASE("rng uniform, normal and below stay in range with the right moments")
{
    RngStream rng(3);
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0;
    std::vector<int> counts(7, 0);
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double o = rng.uniform_open();
        REQUIRE(o > 0.0);
        REQUIRE(o < 1.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
        ++counts[rng.below(7)];
    }
    // Tolerances are about 5 standard errors.
    CHECK(std::abs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(sn / n) < 5 / std::sqrt(double(n)));
    CHECK(std::abs(sn2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
    for (int c : counts) CHECK(std::abs(c - n / 7.0) < 5 * std::sqrt(n / 7.0));
}

TEST_CASE("shuffle is a permutation")
{
    RngStream rng(9);
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    rng.shuffle(std::span<int>(v));
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("sample covariance hand examples")
{
    const std::vector<double> f{1, 2, 3}, g{2, 4, 7};
    CHECK(sample_cov(f, f) == doctest::Approx(1.0));
    CHECK(sample_cov(f, g) == doctest::Approx(2.5));
    CHECK(sample_var(g) == doctest::Approx(19.0 / 3.0));
    const std::vector<double> c{5, 5, 5};
    CHECK(sample_cov(f, c) == 0.0);
    const std::vector<double> x{1, 2}, y{2, 1};
    CHECK(sample_cov(x, y) == doctest::Approx(-0.5));
    const std::vector<double> a{1, -1}, b{-1, 1};
    CHECK(sample_cov(a, b) == doctest::Approx(-2.0));
    CHECK(mean(g) == doctest::Approx(13.0 / 3.0));
}

TEST_CASE("sample covariance is bilinear and symmetric")
{
    RngStream rng(5);
    std::vector<double> a(30), b(30), c(30);
    for (int i = 0; i < 30; ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal();
        c[i] = rng.normal();
    }
    std::vector<double> mix(30);
    for (int i = 0; i < 30; ++i) mix[i] = 2.0 * a[i] - 3.0 * b[i] + 4.0;
    CHECK(sample_cov(mix, c) == doctest::Approx(2.0 * sample_cov(a, c) - 3.0 * sample_cov(b, c)));
    CHECK(sample_cov(a, b) == doctest::Approx(sample_cov(b, a)));
}

TEST_CASE("stats reject bad input")
{
    const std::vector<double> one{1.0}, two{1.0, 2.0}, empty;
    CHECK_THROWS_AS(mean(empty), std::invalid_argument);
    CHECK_THROWS_AS(sample_cov(one, one), std::invalid_argument);
    CHECK_THROWS_AS(sample_cov(two, one), std::invalid_argument);
}

TEST_CASE("point sets store rows and subsets in order")
{
    PointSet p(2);
    const double r0[] = {1, 2}, r1[] = {3, 4}, r2[] = {5, 6};
    p.push_back(r0);
    p.push_back(r1);
    p.push_back(r2);
    CHECK(p.size() == 3);
    CHECK(p[1][0] == 3);
    const std::vector<std::size_t> idx{2, 0};
    const PointSet s = p.subset(idx);
    CHECK(s.size() == 2);
    CHECK(s[0][1] == 6);
    CHECK(s[1][0] == 1);
    const double bad[] = {1, 2, 3};
    CHECK_THROWS(p.push_back(bad));
}

TEST_CASE("data set validation")
{
    DataSet d{PointSet(2, 1), {1.0, 2.0}, std::nullopt};
    CHECK_NOTHROW(d.validate());
    d.values.push_back(3.0);
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    d.values.pop_back();
    d.weights = std::vector<double>{1.0, 0.0};
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("fold partitions cover every index once with balanced sizes")
{
    RngStream rng(11);
    for (std::size_t n : {2u, 7u, 10u, 33u}) {
        for (std::size_t k = 2; k <= n && k <= 8; ++k) {
            const FoldPartition p = make_partition(n, k, rng);
            REQUIRE(p.folds() == k);
            CHECK_NOTHROW(validate_partition(p, n));
            std::vector<int> seen(n, 0);
            for (std::size_t f = 0; f < k; ++f) {
                const std::size_t expect = n / k + (f < n % k ? 1 : 0);
                CHECK(p.heldout[f].size() == expect);
                for (auto i : p.heldout[f]) ++seen[i];
                std::set<std::size_t> in(p.heldin[f].begin(), p.heldin[f].end());
                CHECK(in.size() == n - expect);
                for (auto i : p.heldout[f]) CHECK(in.count(i) == 0);
            }
            for (int s : seen) CHECK(s == 1);
        }
    }
}

TEST_CASE("leave-one-out partition has singleton folds")
{
    RngStream rng(1);
    const FoldPartition p = make_partition(6, 6, rng);
    for (const auto& f : p.heldout) CHECK(f.size() == 1);
}

TEST_CASE("bootstrap partitions keep held-out folds and resample held-in sets")
{
    RngStream rng(2);
    const std::size_t n = 23, k = 4;
    const FoldPartition p = make_bootstrap_partition(n, k, rng);
    CHECK_NOTHROW(validate_partition(p, n));
    bool overlap = false;
    for (std::size_t f = 0; f < k; ++f) {
        CHECK(p.heldin[f].size() == n - p.heldout[f].size());
        std::set<std::size_t> in(p.heldin[f].begin(), p.heldin[f].end());
        CHECK(in.size() == p.heldin[f].size());
        for (auto i : in) CHECK(i < n);
        for (auto i : p.heldout[f]) overlap = overlap || in.count(i);
    }
    CHECK(overlap);
}

TEST_CASE("partition arguments are checked")
{
    RngStream rng(1);
    CHECK_THROWS_AS(make_partition(3, 0, rng), std::invalid_argument);
    CHECK_THROWS_AS(make_partition(3, 4, rng), std::invalid_argument);
    FoldPartition bad{{{0, 1}, {1}}, {{2}, {0}}};
    CHECK_THROWS_AS(validate_partition(bad, 3), std::invalid_argument);
}
