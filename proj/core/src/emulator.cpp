#include "dppdesign/emulator.hpp"

#include "dppdesign/dpp.hpp"
#include "dppdesign/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace dppdesign {

namespace {

// Veto on a kernel position given the positions already picked.
using Admissible =
    std::function<bool(Index position, const std::vector<Index> &picks)>;

// Greedy argmax over projection weights of the leading eigenvectors in `top`.
// Returns kernel positions in pick order, fewer than n only if the veto leaves
// nothing with positive weight.
std::vector<Index> greedy_mode(const EigenSystem &top, Index n, Rng *tie_rng,
                               const Admissible &admissible) {
  const std::vector<Index> modes = select_mode_subset(top, n);
  ProjectionBasis proj(top.eigenvectors(Eigen::all, modes));
  std::vector<char> taken(static_cast<std::size_t>(top.size()), 0);
  std::vector<Index> picks;
  picks.reserve(static_cast<std::size_t>(n));
  std::vector<Index> ties;

  for (Index step = 0; step < n; ++step) {
    const Eigen::VectorXd w = proj.weights();
    double best = -1.0;
    for (Index x = 0; x < w.size(); ++x) {
      if (taken[static_cast<std::size_t>(x)] || (admissible && !admissible(x, picks)))
        continue;
      best = std::max(best, w[x]);
    }
    if (best < 1e-12)
      break;

    ties.clear();
    for (Index x = 0; x < w.size(); ++x) {
      if (taken[static_cast<std::size_t>(x)] || (admissible && !admissible(x, picks)))
        continue;
      if (w[x] >= best - kTieTolerance)
        ties.push_back(x);
    }
    const Index pick =
        tie_rng && ties.size() > 1 ? ties[uniform_index(*tie_rng, ties.size())]
                                   : ties.front();
    picks.push_back(pick);
    taken[static_cast<std::size_t>(pick)] = 1;
    proj.condition_on(pick);
  }
  return picks;
}

bool same_coordinate(double a, double b, bool lattice) {
  return lattice ? a == b : std::abs(a - b) <= 1e-9;
}

} // namespace

std::vector<Index> select_mode_subset(const EigenSystem &eig, Index n) {
  if (n < 1 || n > eig.rank_count())
    throw CardinalityError("mode subset size " + std::to_string(n) +
                           " is outside [1, " +
                           std::to_string(eig.rank_count()) + "]");
  std::vector<Index> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), Index{0});
  return s;
}

std::vector<Index> emulate_ids(const KernelMatrix &kernel, Index n,
                               Rng *tie_rng) {
  if (n < 1 || n > kernel.size())
    throw CardinalityError("design size " + std::to_string(n) +
                           " is outside [1, " + std::to_string(kernel.size()) +
                           "]");
  const EigenSystem top = leading_eigenpairs(kernel, n);
  const std::vector<Index> picks = greedy_mode(top, n, tie_rng, {});
  if (static_cast<Index>(picks.size()) != n)
    throw SamplerError("projection weights vanished before " +
                       std::to_string(n) + " points were chosen");
  std::vector<Index> ids;
  ids.reserve(picks.size());
  for (Index p : picks)
    ids.push_back(kernel.candidate_ids[static_cast<std::size_t>(p)]);
  return ids;
}

Design emulate_design(const KernelMatrix &kernel, Index n,
                      const CandidateSet &candidates, Rng *tie_rng) {
  Design d = make_design(candidates, emulate_ids(kernel, n, tie_rng),
                         Provenance::Emulated);
  d.log_det = dpp_log_pmf(kernel, d.indices).value;
  return d;
}

std::vector<Index> violating_set(const CandidateSet &candidates,
                                 const Design &design) {
  const Index N = candidates.size();
  const Index d = candidates.dim();
  const bool lattice = candidates.is_lattice();
  std::vector<char> flag(static_cast<std::size_t>(N), 0);
  for (Index id : design.indices)
    flag[static_cast<std::size_t>(id)] = 2; // selected, never reported

  for (Index i = 0; i < design.size(); ++i) {
    for (Index j = 0; j < d; ++j) {
      const double v = candidates.point(design.indices[static_cast<std::size_t>(i)])[j];
      for (Index k = 0; k < N; ++k) {
        if (flag[static_cast<std::size_t>(k)] == 0 &&
            same_coordinate(candidates.points()(k, j), v, lattice))
          flag[static_cast<std::size_t>(k)] = 1;
      }
    }
  }
  std::vector<Index> out;
  for (Index k = 0; k < N; ++k)
    if (flag[static_cast<std::size_t>(k)] == 1)
      out.push_back(k);
  return out;
}

Design sequential_design(const CandidateSet &candidates,
                         const KernelSpec &base_spec,
                         const SequentialState &state, bool enforce_projection,
                         Rng *tie_rng) {
  if (state.batch_sizes.size() != state.rho_schedule.size())
    throw InvalidArgument("rho schedule has " +
                          std::to_string(state.rho_schedule.size()) +
                          " entries for " +
                          std::to_string(state.batch_sizes.size()) + " batches");
  for (Index b : state.batch_sizes)
    if (b < 1)
      throw InvalidArgument("batch sizes must be positive");

  const Index N = candidates.size();
  const bool lattice = candidates.is_lattice();
  Design so_far = make_design(candidates, state.existing.indices,
                              Provenance::Sequential);
  for (Index id : state.excluded)
    if (id < 0 || id >= N)
      throw InvalidArgument("excluded index " + std::to_string(id) +
                            " is out of range");

  KernelMatrix last_kernel;
  for (std::size_t b = 0; b < state.batch_sizes.size(); ++b) {
    const Index batch = state.batch_sizes[b];
    KernelSpec spec = base_spec;
    spec.rho = state.rho_schedule[b];
    last_kernel = build_kernel_matrix(candidates, spec);

    std::vector<char> removed(static_cast<std::size_t>(N), 0);
    for (Index id : so_far.indices)
      removed[static_cast<std::size_t>(id)] = 1;
    for (Index id : state.excluded)
      removed[static_cast<std::size_t>(id)] = 1;
    if (enforce_projection)
      for (Index id : violating_set(candidates, so_far))
        removed[static_cast<std::size_t>(id)] = 1;

    std::vector<Index> conditioning;
    for (Index k = 0; k < N; ++k)
      if (removed[static_cast<std::size_t>(k)])
        conditioning.push_back(k);
    const auto available = static_cast<std::size_t>(N) - conditioning.size();
    if (available < static_cast<std::size_t>(batch))
      throw CapacityError(b, static_cast<std::size_t>(batch), available);

    const KernelMatrix reduced = condition_kernel(last_kernel, conditioning);
    const EigenSystem top = leading_eigenpairs(reduced, batch);

    // Within the batch, a pick rules out candidates sharing its coordinates.
    Admissible admissible;
    if (enforce_projection) {
      admissible = [&](Index pos, const std::vector<Index> &picks) {
        const auto cand = candidates.point(
            reduced.candidate_ids[static_cast<std::size_t>(pos)]);
        for (Index p : picks) {
          const auto other = candidates.point(
              reduced.candidate_ids[static_cast<std::size_t>(p)]);
          for (Index j = 0; j < candidates.dim(); ++j)
            if (same_coordinate(cand[j], other[j], lattice))
              return false;
        }
        return true;
      };
    }
    const std::vector<Index> picks = greedy_mode(top, batch, tie_rng, admissible);
    if (static_cast<Index>(picks.size()) < batch)
      throw CapacityError(b, static_cast<std::size_t>(batch), picks.size());

    std::vector<Index> batch_ids;
    for (Index p : picks)
      batch_ids.push_back(reduced.candidate_ids[static_cast<std::size_t>(p)]);
    std::vector<Index> all = so_far.indices;
    all.insert(all.end(), batch_ids.begin(), batch_ids.end());
    so_far = make_design(candidates, all, Provenance::Sequential);
  }

  if (!state.batch_sizes.empty())
    so_far.log_det = dpp_log_pmf(last_kernel, so_far.indices).value;
  return so_far;
}

} // namespace dppdesign
