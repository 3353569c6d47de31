#include "dppdesign/kernel.hpp"

#include "dppdesign/error.hpp"

#include <Eigen/Cholesky>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dppdesign {

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "gaussian" || name == "gaussian_iso")
    return KernelFamily::GaussianIso;
  if (name == "exponential" || name == "exponential_l1")
    return KernelFamily::ExponentialL1;
  throw InvalidArgument("unknown kernel family '" + std::string(name) + "'");
}

std::string_view to_string(KernelFamily family) {
  switch (family) {
  case KernelFamily::GaussianIso:
    return "gaussian_iso";
  case KernelFamily::ExponentialL1:
    return "exponential_l1";
  }
  return "unknown";
}

void KernelSpec::validate() const {
  if (!(rho > 0.0 && rho < 1.0))
    throw InvalidArgument("kernel rho must lie in (0,1), got " +
                          std::to_string(rho));
  if (!(nugget >= 0.0) || !std::isfinite(nugget))
    throw InvalidArgument("kernel nugget must be >= 0");
}

Index KernelMatrix::position_of(Index id) const {
  auto it = std::lower_bound(candidate_ids.begin(), candidate_ids.end(), id);
  if (it == candidate_ids.end() || *it != id)
    throw InvalidArgument("candidate " + std::to_string(id) +
                          " is not covered by this kernel");
  return static_cast<Index>(it - candidate_ids.begin());
}

KernelMatrix KernelMatrix::from_entries(Eigen::MatrixXd entries,
                                        KernelSpec spec) {
  if (entries.rows() != entries.cols() || entries.rows() < 1)
    throw InvalidArgument("kernel matrix must be square and non-empty");
  KernelMatrix k;
  k.candidate_ids.resize(static_cast<std::size_t>(entries.rows()));
  std::iota(k.candidate_ids.begin(), k.candidate_ids.end(), Index{0});
  k.entries = std::move(entries);
  k.spec = spec;
  return k;
}

KernelMatrix build_kernel_matrix(const CandidateSet &candidates,
                                 const KernelSpec &spec) {
  spec.validate();
  const Index n = candidates.size();
  const Eigen::MatrixXd &pts = candidates.points();

  KernelMatrix k;
  k.spec = spec;
  k.entries.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    k.entries(j, j) = 1.0 + spec.nugget;
    for (Index i = j + 1; i < n; ++i) {
      const double c = spec.correlation(pts.row(i), pts.row(j));
      k.entries(i, j) = c;
      k.entries(j, i) = c;
    }
  }
  k.candidate_ids.resize(static_cast<std::size_t>(n));
  std::iota(k.candidate_ids.begin(), k.candidate_ids.end(), Index{0});
  return k;
}

namespace {

// Top `count` eigenpairs of a symmetric matrix via LAPACK dsyevr, returned in
// descending order.
EigenSystem symmetric_eigen(const KernelMatrix &kernel, Index count) {
  const Index n = kernel.size();
  if (count < 0 || count > n)
    throw CardinalityError("requested " + std::to_string(count) +
                           " eigenpairs of a " + std::to_string(n) + "x" +
                           std::to_string(n) + " kernel");

  EigenSystem out;
  out.candidate_ids = kernel.candidate_ids;
  if (count == 0) {
    out.eigenvalues.resize(0);
    out.eigenvectors.resize(n, 0);
    return out;
  }

  Eigen::MatrixXd work = kernel.entries;
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(n, count);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const auto ln = static_cast<lapack_int>(n);
  const char range = count == n ? 'A' : 'I';
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', range, 'L', ln, work.data(), ln, 0.0, 0.0,
      static_cast<lapack_int>(n - count + 1), ln, 0.0, &found, values.data(),
      vectors.data(), ln, support.data());
  if (info != 0 || found != static_cast<lapack_int>(count))
    throw Error("symmetric eigensolver failed (LAPACK info " +
                std::to_string(info) + ")");

  // LAPACK returns ascending values; reorder descending, ties in solver order.
  std::vector<Index> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return values[a] > values[b]; });

  out.eigenvalues.resize(count);
  out.eigenvectors.resize(n, count);
  for (Index k = 0; k < count; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    double lambda = values[src];
    if (lambda < -kPsdTolerance)
      throw NotPsdError(lambda);
    if (lambda < 0.0)
      lambda = 0.0;
    out.eigenvalues[k] = lambda;

    auto col = vectors.col(src);
    Index pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    out.eigenvectors.col(k) = col[pivot] < 0.0 ? (-col).eval() : col.eval();
  }

  const Eigen::MatrixXd gram = out.eigenvectors.transpose() * out.eigenvectors;
  const double drift =
      (gram - Eigen::MatrixXd::Identity(count, count)).cwiseAbs().maxCoeff();
  if (!(drift <= 1e-8))
    throw Error("LAPACK returned eigenvectors that are not orthonormal (max "
                "deviation " + std::to_string(drift) +
                "); the BLAS backend is faulty on this machine");
  return out;
}

bool factor_with_jitter(const Eigen::MatrixXd &block,
                        Eigen::LLT<Eigen::MatrixXd> &llt) {
  static constexpr double kJitter[] = {0.0, 1e-12, 1e-10};
  const double scale = std::max(1.0, block.diagonal().cwiseAbs().maxCoeff());
  for (double jitter : kJitter) {
    Eigen::MatrixXd a = block;
    a.diagonal().array() += jitter;
    llt.compute(a);
    if (llt.info() != Eigen::Success)
      continue;
    const Eigen::VectorXd pivots = llt.matrixLLT().diagonal();
    if (!pivots.allFinite())
      continue;
    if ((pivots.array().square() > 1e-14 * scale).all())
      return true;
  }
  return false;
}

} // namespace

EigenSystem eigendecompose(const KernelMatrix &kernel) {
  return symmetric_eigen(kernel, kernel.size());
}

EigenSystem leading_eigenpairs(const KernelMatrix &kernel, Index k) {
  return symmetric_eigen(kernel, k);
}

KernelMatrix condition_kernel(const KernelMatrix &kernel,
                              std::span<const Index> selected_ids) {
  const Index n = kernel.size();
  std::vector<char> is_selected(static_cast<std::size_t>(n), 0);
  std::vector<Index> sel;
  sel.reserve(selected_ids.size());
  for (Index id : selected_ids) {
    const Index pos = kernel.position_of(id);
    if (is_selected[static_cast<std::size_t>(pos)])
      throw InvalidArgument("candidate " + std::to_string(id) +
                            " listed twice in conditioning set");
    is_selected[static_cast<std::size_t>(pos)] = 1;
    sel.push_back(pos);
  }
  if (sel.empty())
    return kernel;
  std::sort(sel.begin(), sel.end());

  std::vector<Index> rest;
  rest.reserve(static_cast<std::size_t>(n) - sel.size());
  for (Index i = 0; i < n; ++i)
    if (!is_selected[static_cast<std::size_t>(i)])
      rest.push_back(i);

  KernelMatrix out;
  out.spec = kernel.spec;
  for (Index pos : rest)
    out.candidate_ids.push_back(kernel.candidate_ids[static_cast<std::size_t>(pos)]);
  if (rest.empty()) {
    out.entries.resize(0, 0);
    return out;
  }

  const Eigen::MatrixXd k_sel = kernel.entries(sel, sel);
  const Eigen::MatrixXd k_cross = kernel.entries(sel, rest);
  Eigen::LLT<Eigen::MatrixXd> llt;
  if (!factor_with_jitter(k_sel, llt))
    throw ConditioningError("conditioning block of size " +
                            std::to_string(sel.size()) +
                            " is numerically singular after jitter 1e-10");

  const Eigen::MatrixXd w = llt.matrixL().solve(k_cross);
  Eigen::MatrixXd schur = kernel.entries(rest, rest);
  schur.noalias() -= w.transpose() * w;
  out.entries = 0.5 * (schur + schur.transpose());
  return out;
}

} // namespace dppdesign
