#ifndef DPPDESIGN_CB_TABLES_HPP
#define DPPDESIGN_CB_TABLES_HPP

#include "dppdesign/candidates.hpp"
#include "dppdesign/random.hpp"

#include <span>
#include <vector>

namespace dppdesign {

/// Tables for the conditional Bernoulli law: independent Bernoulli indicators
/// with odds lambda_k, conditioned on exactly n successes, so that
/// P(S) is proportional to prod_{k in S} lambda_k over |S| = n.
///
/// The central quantity is R(k, j) = e_k(lambda_j, ..., lambda_{N-1}), the
/// k-th elementary symmetric polynomial of the eigenvalue suffix starting at
/// (0-based) position j. Entries are stored as logarithms and filled with
///
///   e_k(C u {i}) = e_k(C) + lambda_i e_{k-1}(C),
///
/// which never subtracts, so long spectra do not cancel.
class CBTables {
public:
  std::span<const double> lambdas() const noexcept { return lambdas_; }
  Index size() const noexcept { return static_cast<Index>(lambdas_.size()); }
  Index n() const noexcept { return n_; }

  /// log R(k, j); -inf when the polynomial is zero.
  double log_r(Index k, Index j) const;
  /// R(k, j). R(0, j) = 1 and R(k, j) = 0 when k exceeds the suffix length.
  double r(Index k, Index j) const;

  /// Probability of including eigen-index j given that `selected` of the
  /// n slots were filled by indices before j:
  ///   lambda_j R(n - selected - 1, j + 1) / R(n - selected, j).
  double inclusion_probability(Index j, Index selected) const;

private:
  friend CBTables build_cb_tables(std::span<const double> lambdas, Index n);

  double stored(Index k, Index j) const {
    return log_table_[static_cast<std::size_t>(j * (n_ + 1) + k)];
  }

  std::vector<double> lambdas_;
  Index n_ = 0;
  std::vector<double> log_table_; // (N + 1) x (n + 1), row j = suffix start
};

/// Throws CardinalityError if n > N and DomainError if any lambda < 0.
CBTables build_cb_tables(std::span<const double> lambdas, Index n);

/// Draws an index set S (ascending, 0-based) with |S| = n exactly.
/// Throws SamplerError if fewer than n eigenvalues are positive.
std::vector<Index> sample_conditional_bernoulli(const CBTables &tables,
                                                Rng &rng);

} // namespace dppdesign

#endif // DPPDESIGN_CB_TABLES_HPP
