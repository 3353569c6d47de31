#include "dppdesign/random.hpp"

#include "dppdesign/error.hpp"

namespace dppdesign {

namespace {
__extension__ typedef unsigned __int128 u128;
} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t uniform_index(Rng &rng, std::size_t n) {
  if (n == 0)
    throw InvalidArgument("uniform_index: empty range");
  const auto range = static_cast<std::uint64_t>(n);
  u128 m = static_cast<u128>(rng()) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<u128>(rng()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

std::size_t sample_discrete(Rng &rng, const double *weights, std::size_t count,
                            double total) {
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = count;
  for (std::size_t i = 0; i < count; ++i) {
    if (weights[i] <= 0.0)
      continue;
    acc += weights[i];
    last_positive = i;
    if (u < acc)
      return i;
  }
  // u landed in the rounding gap at the top of the cumulative sum.
  if (last_positive == count)
    throw SamplerError("sample_discrete: all weights are zero");
  return last_positive;
}

} // namespace dppdesign
