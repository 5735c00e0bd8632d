#pragma once

// Seeded random streams. Each consumer asks for a named stream so that adding
// draws in one module never shifts the numbers seen by another.

#include <cstdint>
#include <random>
#include <string_view>

#include "gdaha/linalg.hpp"

namespace gdaha {

class RandomStreams {
 public:
  explicit RandomStreams(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t seed() const { return seed_; }
  std::mt19937_64 stream(std::string_view name, std::uint64_t index = 0) const;

 private:
  std::uint64_t seed_;
};

/// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng);
/// Standard complex Gaussian (independent N(0, 1/2) parts), Box-Muller.
Complex complex_gaussian(std::mt19937_64& rng);
CMatrix random_matrix(std::mt19937_64& rng, int rows, int cols);

}  // namespace gdaha
