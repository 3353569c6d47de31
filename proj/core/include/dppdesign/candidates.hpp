#ifndef DPPDESIGN_CANDIDATES_HPP
#define DPPDESIGN_CANDIDATES_HPP

#include <Eigen/Core>

#include <cstddef>

namespace dppdesign {

using Index = Eigen::Index;

/// The discrete design space: N distinct points in [0,1]^d, one per row.
///
/// Construction validates the invariants (N >= 1, d >= 1, finite coordinates
/// inside the unit cube, no duplicate rows) and throws on violation, so any
/// CandidateSet in hand is valid.
class CandidateSet {
public:
  explicit CandidateSet(Eigen::MatrixXd points, bool lattice = false);

  /// The m^d lattice of cell centres (i - 0.5) / m, i = 1..m, with the last
  /// dimension varying fastest.
  static CandidateSet grid(Index m, Index d);

  Index size() const noexcept { return points_.rows(); }
  Index dim() const noexcept { return points_.cols(); }

  const Eigen::MatrixXd &points() const noexcept { return points_; }
  auto point(Index i) const { return points_.row(i); }

  /// True for sets produced by grid(); coordinates compare exactly.
  bool is_lattice() const noexcept { return lattice_; }

private:
  Eigen::MatrixXd points_;
  bool lattice_;
};

} // namespace dppdesign

#endif // DPPDESIGN_CANDIDATES_HPP
