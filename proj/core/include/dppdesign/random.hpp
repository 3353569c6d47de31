#ifndef DPPDESIGN_RANDOM_HPP
#define DPPDESIGN_RANDOM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <thread>
#include <vector>

namespace dppdesign {

/// Every stochastic routine takes one of these explicitly.
using Rng = std::mt19937_64;

/// SplitMix64 mix of (master, stream); used to give each replicate its own stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). Lemire's nearly-divisionless rejection.
std::size_t uniform_index(Rng &rng, std::size_t n);

/// Index drawn from nonnegative weights summing to `total`.
std::size_t sample_discrete(Rng &rng, const double *weights, std::size_t count,
                            double total);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written to per-index slots; scheduling never changes them.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn &&fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> failures(jobs);
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += jobs)
          fn(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto &t : workers)
    t.join();
  for (auto &f : failures)
    if (f)
      std::rethrow_exception(f);
}

} // namespace dppdesign

#endif // DPPDESIGN_RANDOM_HPP
