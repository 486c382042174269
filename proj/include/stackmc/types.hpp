#pragma once

#include "stackmc/rng.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace stackmc {

using Point = std::span<const double>;

// Row-major collection of points sharing one dimension. Categorical points
// store their bits as -1.0 / +1.0.
class PointSet {
public:
    explicit PointSet(std::size_t dim = 1);
    PointSet(std::size_t count, std::size_t dim);

    std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    bool empty() const { return data_.empty(); }

    Point operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }

    void push_back(Point x);
    void reserve(std::size_t count) { data_.reserve(count * dim_); }

    // Points at the given indices, in order.
    PointSet subset(std::span<const std::size_t> indices) const;

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    std::size_t dim_;
    std::vector<double> data_;
};

// Sample points, their function values f(x_i) and, for importance-sampled
// data, the likelihood ratios p(x_i) / q(x_i).
struct DataSet {
    PointSet points;
    std::vector<double> values;
    std::optional<std::vector<double>> weights;

    std::size_t size() const { return values.size(); }

    // Throws std::invalid_argument if the sizes disagree or a weight is not positive.
    void validate() const;
};

// Assignment of sample indices to K held-out folds, plus the held-in
// (training) index set for each fold.
struct FoldPartition {
    std::vector<std::vector<std::size_t>> heldout;
    std::vector<std::vector<std::size_t>> heldin;

    std::size_t folds() const { return heldout.size(); }
};

// Random K-fold partition of {0..n-1}. The first (n mod k) folds receive one
// extra index; held-in sets are the complements of the held-out sets.
FoldPartition make_partition(std::size_t n, std::size_t k, RngStream& rng);

// Same held-out folds, but each held-in set is a uniform subset of size
// n - m_k drawn without replacement from all n indices.
FoldPartition make_bootstrap_partition(std::size_t n, std::size_t k, RngStream& rng);

// Throws std::invalid_argument unless the held-out sets cover {0..n-1}
// exactly once and every held-in index is in range.
void validate_partition(const FoldPartition& partition, std::size_t n);

}  // namespace stackmc
