#ifndef DPPDESIGN_BASELINES_HPP
#define DPPDESIGN_BASELINES_HPP

#include "dppdesign/candidates.hpp"
#include "dppdesign/design.hpp"
#include "dppdesign/kernel.hpp"
#include "dppdesign/random.hpp"

#include <Eigen/Core>
#include <vector>

namespace dppdesign {

enum class Placement {
  Centroid, ///< (bin - 0.5) / n
  Uniform,  ///< uniform inside the bin
};

/// Latin hypercube sample. Each column of `bins` is a permutation of 1..n.
struct LhsDesign {
  Eigen::MatrixXi bins;
  Eigen::MatrixXd points;
};

LhsDesign lhs_design(Index n, Index d, Placement placement, Rng &rng);

/// Uniform random n-subset of the candidates, in draw order.
Design random_design(const CandidateSet &candidates, Index n, Rng &rng);

struct ExchangeResult {
  Design design;
  /// log-det of the current design: the initial value, then one entry per
  /// iteration. Nondecreasing.
  std::vector<double> trace;
};

/// One-point exchange on the log-determinant criterion. Starts from a
/// uniform random n-subset of the kernel's candidates; each iteration swaps
/// a random design slot for a random non-design candidate and keeps the
/// swap only if the log-det strictly increases.
ExchangeResult fedorov_exchange(const KernelMatrix &kernel, Index n,
                                long iters, Rng &rng,
                                const CandidateSet &candidates);

/// n i.i.d. normal points with the given mean and sd in every coordinate,
/// rejected until they fall inside [0,1]^d. sd == 0 gives n copies of the
/// mean.
Eigen::MatrixXd clustered_design(Index n, Index d, double mean, double sd,
                                 Rng &rng);

} // namespace dppdesign

#endif // DPPDESIGN_BASELINES_HPP
