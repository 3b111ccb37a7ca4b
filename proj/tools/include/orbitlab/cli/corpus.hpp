#pragma once

#include <cstdint>
#include <vector>

#include "orbitlab/finite_matrix.hpp"

namespace orbitlab::cli {

/// Reproducible random rational matrices with entries in [-entry_bound,
/// entry_bound] and denominators up to max_denominator. Depends only on the
/// arguments: mt19937_64 output is fixed by the standard and the mapping to
/// entries does not go through library distributions.
std::vector<FiniteMatrix> seeded_random_corpus(std::uint64_t seed, std::size_t count, std::size_t dim,
                                               std::uint64_t entry_bound,
                                               std::uint64_t max_denominator = 8);

}  // namespace orbitlab::cli
