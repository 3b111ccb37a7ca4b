#include "orbitlab/cli/corpus.hpp"

#include <random>
#include <stdexcept>

namespace orbitlab::cli {

std::vector<FiniteMatrix> seeded_random_corpus(std::uint64_t seed, std::size_t count, std::size_t dim,
                                               std::uint64_t entry_bound, std::uint64_t max_denominator) {
  if (count == 0) return {};
  if (dim == 0) throw std::invalid_argument("seeded_random_corpus: dim must be at least 1");
  if (max_denominator == 0) throw std::invalid_argument("seeded_random_corpus: max_denominator must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<FiniteMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    FiniteMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        const std::uint64_t den = 1 + rng() % max_denominator;
        const std::uint64_t half = entry_bound * den;
        const std::uint64_t pick = rng() % (2 * half + 1);
        Rational v(mpz_class(std::to_string(pick)) - mpz_class(std::to_string(half)),
                   mpz_class(std::to_string(den)));
        v.canonicalize();
        m(r, c) = std::move(v);
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace orbitlab::cli
