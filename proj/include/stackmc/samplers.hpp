#pragma once

#include "stackmc/distribution.hpp"
#include "stackmc/rng.hpp"
#include "stackmc/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace stackmc {

// n IID draws from p.
PointSet simple_sample(const Distribution& p, std::size_t n, RngStream& rng);

// Latin-hypercube design in [0,1)^d: along every axis each stratum
// [i/n, (i+1)/n) holds exactly one point.
PointSet latin_hypercube(std::size_t n, std::size_t d, RngStream& rng);

// Largest dimension halton() supports (one prime base per axis).
std::size_t halton_max_dim();

// Points burn_in+1 .. burn_in+n of the d-dimensional Halton sequence, using
// the first d primes as bases. With a scramble seed every base gets random
// digit permutations (one per digit position, 32 digits deep).
PointSet halton(std::size_t n, std::size_t d, std::optional<std::uint64_t> scramble_seed = std::nullopt,
                std::uint64_t burn_in = 0);

// Maps points of the unit cube to p through the per-axis inverse CDF
// (affine for UniformBox). Throws for categorical distributions.
PointSet transform_to(const PointSet& unit_points, const Distribution& p);

// Draws points from q and attaches likelihood-ratio weights p(x)/q(x).
// Values are left zero-filled for the caller to evaluate.
DataSet importance_sample(const Distribution& p, const Distribution& q, std::size_t n, RngStream& rng);

}  // namespace stackmc
