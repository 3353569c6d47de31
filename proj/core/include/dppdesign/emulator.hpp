#ifndef DPPDESIGN_EMULATOR_HPP
#define DPPDESIGN_EMULATOR_HPP

#include "dppdesign/candidates.hpp"
#include "dppdesign/design.hpp"
#include "dppdesign/kernel.hpp"
#include "dppdesign/random.hpp"

#include <vector>

namespace dppdesign {

/// Argmax ties closer than this are resolved by lowest candidate id (or by
/// the tie rng when one is supplied).
inline constexpr double kTieTolerance = 1e-12;

/// Eigen-indices of the most probable conditional Bernoulli outcome of size
/// n. Because P(S) is proportional to the product of the selected
/// eigenvalues and they are sorted descending, this is {0, ..., n-1}.
std::vector<Index> select_mode_subset(const EigenSystem &eig, Index n);

/// Candidate ids picked by the greedy mode search below, in pick order.
/// Needs no coordinates, so it also serves kernels over raw data rows.
std::vector<Index> emulate_ids(const KernelMatrix &kernel, Index n,
                               Rng *tie_rng = nullptr);

/// Greedy mode of the fixed-rank DPP: take the n leading eigenvectors and
/// repeatedly pick the candidate with the largest projection weight,
/// conditioning the basis on each pick. Deterministic unless `tie_rng` is
/// given. The design's log_det is filled in.
Design emulate_design(const KernelMatrix &kernel, Index n,
                      const CandidateSet &candidates, Rng *tie_rng = nullptr);

/// Unselected candidates sharing at least one coordinate with a design
/// point: exact comparison on lattices, |a - b| <= 1e-9 otherwise.
/// Returned ascending.
std::vector<Index> violating_set(const CandidateSet &candidates,
                                 const Design &design);

struct SequentialState {
  Design existing;                 ///< may be empty
  std::vector<Index> excluded;     ///< never selectable; existing ids implied
  std::vector<double> rho_schedule; ///< one per batch
  std::vector<Index> batch_sizes;
};

/// Batch-sequential emulation. For each batch b: rebuild the kernel over all
/// candidates at rho_schedule[b], remove the selected points (and, when
/// `enforce_projection`, every candidate sharing a coordinate with them) by
/// Schur conditioning, and emulate batch_sizes[b] points on what is left.
/// With `enforce_projection`, picks inside a batch also exclude each other's
/// coordinates, so the final design never collapses in any margin.
///
/// Throws CapacityError when a batch has too few admissible candidates.
Design sequential_design(const CandidateSet &candidates,
                         const KernelSpec &base_spec,
                         const SequentialState &state, bool enforce_projection,
                         Rng *tie_rng = nullptr);

} // namespace dppdesign

#endif // DPPDESIGN_EMULATOR_HPP
