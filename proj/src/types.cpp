#include "stackmc/types.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stackmc {

PointSet::PointSet(std::size_t dim) : dim_(dim)
{
    if (dim == 0) {
        throw std::invalid_argument("PointSet: dimension must be at least 1");
    }
}

PointSet::PointSet(std::size_t count, std::size_t dim) : PointSet(dim) { data_.assign(count * dim, 0.0); }

void PointSet::push_back(Point x)
{
    if (x.size() != dim_) {
        throw std::invalid_argument("PointSet::push_back: expected dimension " + std::to_string(dim_) +
                                    ", got " + std::to_string(x.size()));
    }
    data_.insert(data_.end(), x.begin(), x.end());
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const
{
    PointSet out(dim_);
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back((*this)[i]);
    return out;
}

void DataSet::validate() const
{
    if (points.size() != values.size()) {
        throw std::invalid_argument("DataSet: " + std::to_string(points.size()) + " points but " +
                                    std::to_string(values.size()) + " values");
    }
    if (weights) {
        if (weights->size() != values.size()) {
            throw std::invalid_argument("DataSet: weight count does not match value count");
        }
        for (double w : *weights) {
            if (!(w > 0.0)) throw std::invalid_argument("DataSet: weights must be positive");
        }
    }
}

namespace {

std::vector<std::vector<std::size_t>> split_heldout(std::size_t n, std::size_t k, RngStream& rng)
{
    if (k < 1 || k > n) {
        throw std::invalid_argument("make_partition: need 1 <= K <= N (K=" + std::to_string(k) +
                                    ", N=" + std::to_string(n) + ")");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));

    std::vector<std::vector<std::size_t>> heldout(k);
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        std::size_t m = base + (f < extra ? 1 : 0);
        heldout[f].assign(order.begin() + pos, order.begin() + pos + m);
        std::sort(heldout[f].begin(), heldout[f].end());
        pos += m;
    }
    return heldout;
}

}  // namespace

FoldPartition make_partition(std::size_t n, std::size_t k, RngStream& rng)
{
    FoldPartition p;
    p.heldout = split_heldout(n, k, rng);
    p.heldin.resize(k);
    std::vector<char> out(n);
    for (std::size_t f = 0; f < k; ++f) {
        std::fill(out.begin(), out.end(), 0);
        for (std::size_t i : p.heldout[f]) out[i] = 1;
        p.heldin[f].reserve(n - p.heldout[f].size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!out[i]) p.heldin[f].push_back(i);
        }
    }
    return p;
}

FoldPartition make_bootstrap_partition(std::size_t n, std::size_t k, RngStream& rng)
{
    FoldPartition p;
    p.heldout = split_heldout(n, k, rng);
    p.heldin.resize(k);
    std::vector<std::size_t> pool(n);
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n - p.heldout[f].size();
        // Partial Fisher-Yates: the first `size` slots are a uniform subset.
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < size; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
            std::swap(pool[i], pool[j]);
        }
        p.heldin[f].assign(pool.begin(), pool.begin() + size);
        std::sort(p.heldin[f].begin(), p.heldin[f].end());
    }
    return p;
}

void validate_partition(const FoldPartition& partition, std::size_t n)
{
    if (partition.heldin.size() != partition.heldout.size()) {
        throw std::invalid_argument("FoldPartition: heldin/heldout fold counts differ");
    }
    std::vector<int> seen(n, 0);
    for (const auto& fold : partition.heldout) {
        for (std::size_t i : fold) {
            if (i >= n) throw std::invalid_argument("FoldPartition: held-out index out of range");
            ++seen[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i] != 1) {
            throw std::invalid_argument("FoldPartition: index " + std::to_string(i) + " held out " +
                                        std::to_string(seen[i]) + " times");
        }
    }
    for (const auto& fold : partition.heldin) {
        if (fold.empty()) throw std::invalid_argument("FoldPartition: empty held-in set");
        for (std::size_t i : fold) {
            if (i >= n) throw std::invalid_argument("FoldPartition: held-in index out of range");
        }
    }
}

}  // namespace stackmc
