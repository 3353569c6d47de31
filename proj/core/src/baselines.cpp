#include "dppdesign/baselines.hpp"

#include "dppdesign/dpp.hpp"
#include "dppdesign/error.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace dppdesign {

namespace {

// First k entries of a uniformly shuffled 0..count-1.
std::vector<Index> partial_shuffle(Index count, Index k, Rng &rng) {
  std::vector<Index> pool(static_cast<std::size_t>(count));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    const auto j = static_cast<Index>(
        static_cast<std::size_t>(i) +
        uniform_index(rng, static_cast<std::size_t>(count - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

} // namespace

LhsDesign lhs_design(Index n, Index d, Placement placement, Rng &rng) {
  if (n < 1 || d < 1)
    throw InvalidArgument("lhs_design needs n >= 1 and d >= 1");
  LhsDesign out;
  out.bins.resize(n, d);
  out.points.resize(n, d);
  for (Index j = 0; j < d; ++j) {
    const std::vector<Index> perm = partial_shuffle(n, n, rng);
    for (Index i = 0; i < n; ++i)
      out.bins(i, j) = static_cast<int>(perm[static_cast<std::size_t>(i)] + 1);
  }
  const double width = 1.0 / static_cast<double>(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double offset =
          placement == Placement::Centroid ? 0.5 : uniform01(rng);
      out.points(i, j) = (out.bins(i, j) - 1 + offset) * width;
    }
  }
  return out;
}

Design random_design(const CandidateSet &candidates, Index n, Rng &rng) {
  if (n < 0 || n > candidates.size())
    throw CardinalityError("random design size " + std::to_string(n) +
                           " is outside [0, " +
                           std::to_string(candidates.size()) + "]");
  return make_design(candidates, partial_shuffle(candidates.size(), n, rng),
                     Provenance::Random);
}

ExchangeResult fedorov_exchange(const KernelMatrix &kernel, Index n,
                                long iters, Rng &rng,
                                const CandidateSet &candidates) {
  const Index N = kernel.size();
  if (n < 1 || n > N)
    throw CardinalityError("exchange design size " + std::to_string(n) +
                           " is outside [1, " + std::to_string(N) + "]");
  if (iters < 0)
    throw InvalidArgument("exchange iterations must be nonnegative");

  // Positions 0..n-1 of `order` hold the design, the rest the pool.
  std::vector<Index> order = partial_shuffle(N, N, rng);
  auto ids_of = [&](const std::vector<Index> &positions) {
    std::vector<Index> ids(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
      ids[static_cast<std::size_t>(i)] =
          kernel.candidate_ids[static_cast<std::size_t>(
              positions[static_cast<std::size_t>(i)])];
    return ids;
  };

  std::vector<Index> ids = ids_of(order);
  double current = dpp_log_pmf(kernel, ids).value;
  ExchangeResult result;
  result.trace.reserve(static_cast<std::size_t>(iters) + 1);
  result.trace.push_back(current);

  const Index pool = N - n;
  for (long it = 0; it < iters; ++it) {
    if (pool > 0) {
      const auto slot = static_cast<Index>(uniform_index(rng, static_cast<std::size_t>(n)));
      const auto cand = n + static_cast<Index>(uniform_index(rng, static_cast<std::size_t>(pool)));
      std::swap(order[static_cast<std::size_t>(slot)], order[static_cast<std::size_t>(cand)]);
      std::vector<Index> proposal = ids_of(order);
      const double value = dpp_log_pmf(kernel, proposal).value;
      if (value > current) {
        current = value;
        ids = std::move(proposal);
      } else {
        std::swap(order[static_cast<std::size_t>(slot)], order[static_cast<std::size_t>(cand)]);
      }
    }
    result.trace.push_back(current);
  }

  result.design = make_design(candidates, ids, Provenance::Exchange);
  result.design.log_det = current;
  return result;
}

Eigen::MatrixXd clustered_design(Index n, Index d, double mean, double sd,
                                 Rng &rng) {
  if (n < 1 || d < 1)
    throw InvalidArgument("clustered_design needs n >= 1 and d >= 1");
  if (!(mean >= 0.0 && mean <= 1.0))
    throw DomainError("cluster mean must lie in [0, 1]");
  if (!(sd >= 0.0) || !std::isfinite(sd))
    throw DomainError("cluster sd must be finite and nonnegative");

  Eigen::MatrixXd pts = Eigen::MatrixXd::Constant(n, d, mean);
  if (sd == 0.0)
    return pts;
  std::normal_distribution<double> normal(mean, sd);
  for (Index i = 0; i < n; ++i) {
    for (;;) {
      bool inside = true;
      for (Index j = 0; j < d; ++j) {
        pts(i, j) = normal(rng);
        inside = inside && pts(i, j) >= 0.0 && pts(i, j) <= 1.0;
      }
      if (inside)
        break;
    }
  }
  return pts;
}

} // namespace dppdesign
