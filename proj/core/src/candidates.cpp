#include "dppdesign/candidates.hpp"

#include "dppdesign/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace dppdesign {

CandidateSet::CandidateSet(Eigen::MatrixXd points, bool lattice)
    : points_(std::move(points)), lattice_(lattice) {
  const Index n = points_.rows();
  const Index d = points_.cols();
  if (n < 1)
    throw InvalidArgument("candidate set must contain at least one point");
  if (d < 1)
    throw InvalidArgument("candidate points must have dimension >= 1");

  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < d; ++k) {
      const double v = points_(i, k);
      if (!std::isfinite(v))
        throw InvalidArgument("candidate " + std::to_string(i) +
                              " has a non-finite coordinate");
      if (v < 0.0 || v > 1.0)
        throw InvalidArgument("candidate " + std::to_string(i) +
                              " lies outside [0,1]^d");
    }
  }

  // Lexicographic sort exposes exact duplicates as neighbours.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  auto less = [&](Index a, Index b) {
    for (Index k = 0; k < d; ++k) {
      if (points_(a, k) != points_(b, k))
        return points_(a, k) < points_(b, k);
    }
    return a < b;
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Index a = order[i - 1];
    const Index b = order[i];
    if ((points_.row(a).array() == points_.row(b).array()).all())
      throw DuplicateCandidateError(std::min(a, b), std::max(a, b));
  }
}

CandidateSet CandidateSet::grid(Index m, Index d) {
  if (m < 1 || d < 1)
    throw InvalidArgument("grid needs m >= 1 and d >= 1");
  Index total = 1;
  for (Index k = 0; k < d; ++k) {
    if (total > (Index{1} << 24) / m)
      throw InvalidArgument("grid m^d is too large");
    total *= m;
  }
  Eigen::MatrixXd pts(total, d);
  for (Index row = 0; row < total; ++row) {
    Index rem = row;
    for (Index k = d - 1; k >= 0; --k) {
      const Index i = rem % m;
      rem /= m;
      pts(row, k) = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    }
  }
  return CandidateSet(std::move(pts), true);
}

} // namespace dppdesign
