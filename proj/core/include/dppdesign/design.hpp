#ifndef DPPDESIGN_DESIGN_HPP
#define DPPDESIGN_DESIGN_HPP

#include "dppdesign/candidates.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dppdesign {

enum class Provenance { Sampled, Emulated, Sequential, Exchange, Lhs, Random };

std::string_view to_string(Provenance p);

/// An ordered selection of distinct candidates.
struct Design {
  std::vector<Index> indices;
  Eigen::MatrixXd coords; ///< one row per entry of `indices`
  Provenance provenance = Provenance::Random;
  std::optional<double> log_det; ///< criterion value, when computed

  Index size() const noexcept { return static_cast<Index>(indices.size()); }
};

/// Builds a Design from candidate indices, copying coordinates. Throws on
/// out-of-range or repeated indices.
Design make_design(const CandidateSet &candidates, std::span<const Index> indices,
                   Provenance provenance);

} // namespace dppdesign

#endif // DPPDESIGN_DESIGN_HPP
