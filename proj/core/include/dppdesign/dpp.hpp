#ifndef DPPDESIGN_DPP_HPP
#define DPPDESIGN_DPP_HPP

#include "dppdesign/cb_tables.hpp"
#include "dppdesign/candidates.hpp"
#include "dppdesign/design.hpp"
#include "dppdesign/kernel.hpp"
#include "dppdesign/random.hpp"

#include <span>

namespace dppdesign {

/// Log-determinant of a principal minor. `singular` is set (and `value` is
/// -inf) when a Cholesky pivot falls to rounding level.
struct LogDet {
  double value = 0.0;
  bool singular = false;
};

/// Orthonormal basis of a projection DPP's range, shrunk by one dimension per
/// chosen point. Row x of the basis is v(x); the selection weight of x is
/// ||v(x)||^2 / k for k surviving columns, which sums to 1 over x.
class ProjectionBasis {
public:
  /// `basis` must have orthonormal columns.
  explicit ProjectionBasis(Eigen::MatrixXd basis);

  Index remaining() const noexcept { return basis_.cols(); }
  const Eigen::MatrixXd &basis() const noexcept { return basis_; }

  /// ||v(x)||^2 / k for every row, before clamping or renormalising.
  Eigen::VectorXd raw_weights() const;

  /// Raw weights with values in [-1e-12, 0) clamped to 0, then renormalised
  /// to sum to 1. Throws SamplerError if every weight is below 1e-12.
  Eigen::VectorXd weights() const;

  /// Restricts the range to vectors vanishing at row `position`: eliminate
  /// that coordinate with the column that loads on it most, drop the column,
  /// and re-orthonormalise the survivors by modified Gram-Schmidt.
  void condition_on(Index position);

private:
  Eigen::MatrixXd basis_;
};

/// Draws the point locations of a projection DPP spanned by eigenvectors
/// `eigen_subset` of `eig`. Indices in the returned design are candidate ids.
Design sample_projection_dpp(const EigenSystem &eig,
                             std::span<const Index> eigen_subset,
                             const CandidateSet &candidates, Rng &rng);

/// Fixed-size DPP draw: eigendecompose, conditional Bernoulli choice of
/// eigenvectors, projection sampling. Deterministic for a given rng state.
Design sample_fixed_rank_dpp(const KernelMatrix &kernel, Index n,
                             const CandidateSet &candidates, Rng &rng);

/// log det K[ids, ids] for candidate ids covered by `kernel`.
LogDet dpp_log_pmf(const KernelMatrix &kernel, std::span<const Index> ids);

} // namespace dppdesign

#endif // DPPDESIGN_DPP_HPP
