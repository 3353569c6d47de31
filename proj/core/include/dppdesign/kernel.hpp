#ifndef DPPDESIGN_KERNEL_HPP
#define DPPDESIGN_KERNEL_HPP

#include "dppdesign/candidates.hpp"

#include <Eigen/Core>

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dppdesign {

/// Eigenvalues in [-kPsdTolerance, 0) are treated as rounding and clamped.
inline constexpr double kPsdTolerance = 1e-8;

enum class KernelFamily {
  GaussianIso,   ///< rho^{||x - x'||_2^2}
  ExponentialL1, ///< rho^{||x - x'||_1}
};

KernelFamily parse_kernel_family(std::string_view name);
std::string_view to_string(KernelFamily family);

struct KernelSpec {
  KernelFamily family = KernelFamily::GaussianIso;
  double rho = 0.01;
  double nugget = 0.0;

  /// Throws InvalidArgument unless 0 < rho < 1 and nugget >= 0.
  void validate() const;

  /// Correlation between two points (without nugget).
  template <typename A, typename B>
  double correlation(const Eigen::MatrixBase<A> &x,
                     const Eigen::MatrixBase<B> &y) const;
};

/// Symmetric N x N kernel over a subset of a candidate set.
///
/// `candidate_ids` lists, in ascending order, which candidates the rows refer
/// to. A freshly built kernel covers 0..N-1; a conditioned kernel covers the
/// survivors.
struct KernelMatrix {
  Eigen::MatrixXd entries;
  KernelSpec spec;
  std::vector<Index> candidate_ids;

  Index size() const noexcept { return entries.rows(); }

  /// Row/column position of candidate `id`; throws InvalidArgument if absent.
  Index position_of(Index id) const;

  /// Wraps a raw symmetric matrix whose rows refer to candidates 0..N-1.
  static KernelMatrix from_entries(Eigen::MatrixXd entries,
                                   KernelSpec spec = {});
};

/// Descending eigenpairs of a KernelMatrix; column k of `eigenvectors`
/// pairs with `eigenvalues[k]`. A leading-pairs decomposition holds fewer
/// than N columns.
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::vector<Index> candidate_ids;

  Index size() const noexcept { return eigenvectors.rows(); }
  Index rank_count() const noexcept { return eigenvalues.size(); }
};

KernelMatrix build_kernel_matrix(const CandidateSet &candidates,
                                 const KernelSpec &spec);

/// Full symmetric eigendecomposition, sorted descending with ties kept in
/// solver order; eigenvector signs are fixed so the largest-magnitude entry
/// is positive. Throws NotPsdError below -kPsdTolerance.
EigenSystem eigendecompose(const KernelMatrix &kernel);

/// The k largest eigenpairs only (same ordering and sign conventions).
EigenSystem leading_eigenpairs(const KernelMatrix &kernel, Index k);

/// Schur complement of the kernel on the candidates not in `selected_ids`:
///   K_rest - K_rest,sel K_sel^{-1} K_sel,rest.
/// The factorisation of K_sel escalates jitter 0, 1e-12, 1e-10 before
/// throwing ConditioningError.
KernelMatrix condition_kernel(const KernelMatrix &kernel,
                              std::span<const Index> selected_ids);

// ---------------------------------------------------------------------------

template <typename A, typename B>
double KernelSpec::correlation(const Eigen::MatrixBase<A> &x,
                               const Eigen::MatrixBase<B> &y) const {
  switch (family) {
  case KernelFamily::GaussianIso:
    return std::pow(rho, (x - y).squaredNorm());
  case KernelFamily::ExponentialL1:
    return std::pow(rho, (x - y).template lpNorm<1>());
  }
  return 0.0;
}

} // namespace dppdesign

#endif // DPPDESIGN_KERNEL_HPP
