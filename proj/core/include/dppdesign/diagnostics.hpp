#ifndef DPPDESIGN_DIAGNOSTICS_HPP
#define DPPDESIGN_DIAGNOSTICS_HPP

#include "dppdesign/design.hpp"
#include "dppdesign/dpp.hpp"
#include "dppdesign/kernel.hpp"

#include <Eigen/Core>

namespace dppdesign {

/// `count` evenly spaced values from lo to hi inclusive.
Eigen::VectorXd linspace(double lo, double hi, Index count);

/// Cell-centre grid with m points per dimension, one point per row.
Eigen::MatrixXd reference_grid(Index m, Index d);

/// Default empty-space reference grid for a candidate set of N points:
/// ceil(sqrt(N)) points per dimension.
Eigen::MatrixXd default_reference_grid(Index candidate_count, Index d);

/// Empty-space function: fraction of reference points whose nearest design
/// point is within h (Euclidean), for each h.
Eigen::VectorXd f_function(const Eigen::MatrixXd &points,
                           const Eigen::MatrixXd &reference,
                           const Eigen::VectorXd &h_grid);

/// Nearest-neighbour function: fraction of design points whose nearest
/// other design point is within h. Needs at least two points.
Eigen::VectorXd g_function(const Eigen::MatrixXd &points,
                           const Eigen::VectorXd &h_grid);

enum class EdgeCorrection { None, Translation };

/// Ripley's K on the unit cube:
///   area / (n (n-1)) * sum_{i != j} w_ij 1(|x_i - x_j| <= r),
/// with w_ij = 1 uncorrected, or 1 / prod_k (1 - |x_ik - x_jk|) under the
/// translation correction.
Eigen::VectorXd ripley_k(const Eigen::MatrixXd &points, double area,
                         const Eigen::VectorXd &r_grid,
                         EdgeCorrection correction = EdgeCorrection::None);

/// K under complete spatial randomness: the volume of the d-ball of radius r.
double k_csr(double r, Index d);

/// Entropy criterion log det R[design, design].
LogDet entropy_criterion(const KernelMatrix &kernel, const Design &design);

/// One- and two-point intensities of an LHS on the n^d lattice of bins.
struct LhsIntensity {
  double ez = 0.0;  ///< P(a given cell is occupied) = n / n^d
  double ezz = 0.0; ///< P(two given distinct cells are both occupied)
  int cov_sign = 0; ///< sign(ezz - ez^2)
};

LhsIntensity lhs_intensity_check(Index n, Index d);

struct PointPatternSummary {
  Eigen::VectorXd h_grid;
  Eigen::VectorXd f_hat;
  Eigen::VectorXd g_hat;
  Eigen::VectorXd r_grid;
  Eigen::VectorXd k_hat;
  Index n = 0;
  Index d = 0;
  double area = 1.0;
};

PointPatternSummary summarize(const Eigen::MatrixXd &points,
                              const Eigen::MatrixXd &reference,
                              const Eigen::VectorXd &h_grid,
                              const Eigen::VectorXd &r_grid,
                              EdgeCorrection correction = EdgeCorrection::None);

} // namespace dppdesign

#endif // DPPDESIGN_DIAGNOSTICS_HPP
