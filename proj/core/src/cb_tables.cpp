#include "dppdesign/cb_tables.hpp"

#include "dppdesign/error.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dppdesign {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf)
    return b;
  if (b == kNegInf)
    return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

} // namespace

CBTables build_cb_tables(std::span<const double> lambdas, Index n) {
  const auto N = static_cast<Index>(lambdas.size());
  if (n < 0 || n > N)
    throw CardinalityError("cardinality " + std::to_string(n) +
                           " is outside [0, " + std::to_string(N) + "]");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 0.0) || !std::isfinite(lambdas[i]))
      throw DomainError("eigenvalue " + std::to_string(i) + " is negative (" +
                        std::to_string(lambdas[i]) + ")");
  }

  CBTables t;
  t.lambdas_.assign(lambdas.begin(), lambdas.end());
  t.n_ = n;
  const Index width = n + 1;
  t.log_table_.assign(static_cast<std::size_t>((N + 1) * width), kNegInf);

  auto at = [&](Index k, Index j) -> double & {
    return t.log_table_[static_cast<std::size_t>(j * width + k)];
  };
  at(0, N) = 0.0;
  for (Index j = N - 1; j >= 0; --j) {
    const double log_lambda = std::log(t.lambdas_[static_cast<std::size_t>(j)]);
    at(0, j) = 0.0;
    for (Index k = 1; k <= n; ++k)
      at(k, j) = log_add(at(k, j + 1), log_lambda + at(k - 1, j + 1));
  }
  return t;
}

double CBTables::log_r(Index k, Index j) const {
  if (j < 0 || j > size())
    throw std::out_of_range("CBTables: suffix start out of range");
  if (k < 0)
    throw std::out_of_range("CBTables: negative order");
  if (k == 0)
    return 0.0;
  if (k > size() - j)
    return -std::numeric_limits<double>::infinity();
  if (k > n_)
    throw std::out_of_range("CBTables: order " + std::to_string(k) +
                            " exceeds the table cardinality " +
                            std::to_string(n_));
  return stored(k, j);
}

double CBTables::r(Index k, Index j) const { return std::exp(log_r(k, j)); }

double CBTables::inclusion_probability(Index j, Index selected) const {
  if (j < 0 || j >= size())
    throw std::out_of_range("CBTables: eigen-index out of range");
  const Index remaining = n_ - selected;
  if (remaining <= 0)
    return 0.0;
  const double den = log_r(remaining, j);
  if (den == -std::numeric_limits<double>::infinity())
    throw SamplerError("conditional Bernoulli state has zero mass: fewer than " +
                       std::to_string(remaining) +
                       " positive eigenvalues remain");
  const double num = std::log(lambdas_[static_cast<std::size_t>(j)]) +
                     log_r(remaining - 1, j + 1);
  return std::min(1.0, std::exp(num - den));
}

std::vector<Index> sample_conditional_bernoulli(const CBTables &tables,
                                                Rng &rng) {
  const Index N = tables.size();
  const Index n = tables.n();
  std::vector<Index> chosen;
  chosen.reserve(static_cast<std::size_t>(n));
  if (n == 0)
    return chosen;
  if (tables.log_r(n, 0) == -std::numeric_limits<double>::infinity())
    throw SamplerError("kernel has fewer than " + std::to_string(n) +
                       " positive eigenvalues");

  for (Index j = 0; j < N && static_cast<Index>(chosen.size()) < n; ++j) {
    const auto have = static_cast<Index>(chosen.size());
    // When the suffix is exactly as long as the shortfall, inclusion is
    // certain; forcing it avoids a 1 - eps probability from log rounding.
    if (N - j == n - have) {
      chosen.push_back(j);
      continue;
    }
    const double p = tables.inclusion_probability(j, have);
    if (uniform01(rng) < p)
      chosen.push_back(j);
  }
  return chosen;
}

} // namespace dppdesign
