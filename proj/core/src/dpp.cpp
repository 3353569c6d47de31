#include "dppdesign/dpp.hpp"

#include "dppdesign/error.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <string>

namespace dppdesign {

ProjectionBasis::ProjectionBasis(Eigen::MatrixXd basis)
    : basis_(std::move(basis)) {}

Eigen::VectorXd ProjectionBasis::raw_weights() const {
  const auto k = static_cast<double>(basis_.cols());
  if (basis_.cols() == 0)
    return Eigen::VectorXd::Zero(basis_.rows());
  return basis_.rowwise().squaredNorm() / k;
}

Eigen::VectorXd ProjectionBasis::weights() const {
  Eigen::VectorXd w = raw_weights();
  for (Index i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0) {
      if (w[i] < -1e-12)
        throw SamplerError("projection weight " + std::to_string(w[i]) +
                           " is negative beyond rounding");
      w[i] = 0.0;
    }
  }
  if (w.size() == 0 || w.maxCoeff() < 1e-12)
    throw SamplerError("projection basis is numerically degenerate");
  w /= w.sum();
  return w;
}

void ProjectionBasis::condition_on(Index position) {
  const Index k = basis_.cols();
  if (k == 0)
    throw SamplerError("projection basis is already exhausted");

  const Eigen::RowVectorXd row = basis_.row(position);
  Index pivot = 0;
  const double magnitude = row.cwiseAbs().maxCoeff(&pivot);
  if (magnitude < 1e-14)
    throw SamplerError("chosen point carries no weight in the projection basis");

  const Eigen::VectorXd lead = basis_.col(pivot) / row[pivot];
  Eigen::MatrixXd next(basis_.rows(), k - 1);
  for (Index c = 0, out = 0; c < k; ++c) {
    if (c == pivot)
      continue;
    next.col(out++) = basis_.col(c) - lead * row[c];
  }
  next.row(position).setZero();

  // Two passes of modified Gram-Schmidt keep orthogonality at large N.
  for (int pass = 0; pass < 2; ++pass) {
    for (Index c = 0; c < next.cols(); ++c) {
      for (Index p = 0; p < c; ++p)
        next.col(c) -= next.col(p).dot(next.col(c)) * next.col(p);
      const double norm = next.col(c).norm();
      if (norm < 1e-12)
        throw SamplerError("projection basis lost rank during orthonormalisation");
      next.col(c) /= norm;
    }
  }
  basis_ = std::move(next);
}

Design sample_projection_dpp(const EigenSystem &eig,
                             std::span<const Index> eigen_subset,
                             const CandidateSet &candidates, Rng &rng) {
  const Index n = static_cast<Index>(eigen_subset.size());
  if (n < 1)
    throw CardinalityError("projection DPP needs at least one eigenvector");
  Eigen::MatrixXd basis(eig.size(), n);
  for (Index c = 0; c < n; ++c) {
    const Index k = eigen_subset[static_cast<std::size_t>(c)];
    if (k < 0 || k >= eig.rank_count())
      throw InvalidArgument("eigen-index " + std::to_string(k) + " out of range");
    basis.col(c) = eig.eigenvectors.col(k);
  }

  ProjectionBasis proj(std::move(basis));
  std::vector<Index> chosen;
  chosen.reserve(static_cast<std::size_t>(n));
  for (Index step = 0; step < n; ++step) {
    const Eigen::VectorXd w = proj.weights();
    const std::size_t pos = sample_discrete(rng, w.data(),
                                            static_cast<std::size_t>(w.size()), 1.0);
    chosen.push_back(eig.candidate_ids[pos]);
    proj.condition_on(static_cast<Index>(pos));
  }
  return make_design(candidates, chosen, Provenance::Sampled);
}

Design sample_fixed_rank_dpp(const KernelMatrix &kernel, Index n,
                             const CandidateSet &candidates, Rng &rng) {
  if (n < 1 || n > kernel.size())
    throw CardinalityError("fixed-rank DPP size " + std::to_string(n) +
                           " is outside [1, " + std::to_string(kernel.size()) +
                           "]");
  const EigenSystem eig = eigendecompose(kernel);
  const CBTables tables = build_cb_tables(
      std::span<const double>(eig.eigenvalues.data(),
                              static_cast<std::size_t>(eig.eigenvalues.size())),
      n);
  const std::vector<Index> subset = sample_conditional_bernoulli(tables, rng);
  Design d = sample_projection_dpp(eig, subset, candidates, rng);
  d.log_det = dpp_log_pmf(kernel, d.indices).value;
  return d;
}

LogDet dpp_log_pmf(const KernelMatrix &kernel, std::span<const Index> ids) {
  const auto n = static_cast<Index>(ids.size());
  std::vector<Index> pos(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    pos[i] = kernel.position_of(ids[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (pos[j] == pos[i])
        throw InvalidArgument("dpp_log_pmf: indices must be distinct");
  }
  if (n == 0)
    return {0.0, false};

  const Eigen::MatrixXd minor = kernel.entries(pos, pos);
  const double scale = std::max(1.0, minor.diagonal().cwiseAbs().maxCoeff());
  Eigen::LLT<Eigen::MatrixXd> llt(minor);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  if (llt.info() != Eigen::Success)
    return {neg_inf, true};
  const Eigen::VectorXd d = llt.matrixLLT().diagonal();
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double pivot = d[i] * d[i];
    if (!std::isfinite(pivot) || pivot <= 1e-13 * scale)
      return {neg_inf, true};
    sum += std::log(pivot);
  }
  return {sum, false};
}

} // namespace dppdesign
