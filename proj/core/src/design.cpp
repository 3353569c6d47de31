#include "dppdesign/design.hpp"

#include "dppdesign/error.hpp"

#include <string>

namespace dppdesign {

std::string_view to_string(Provenance p) {
  switch (p) {
  case Provenance::Sampled:
    return "sampled";
  case Provenance::Emulated:
    return "emulated";
  case Provenance::Sequential:
    return "sequential";
  case Provenance::Exchange:
    return "exchange";
  case Provenance::Lhs:
    return "lhs";
  case Provenance::Random:
    return "random";
  }
  return "unknown";
}

Design make_design(const CandidateSet &candidates, std::span<const Index> indices,
                   Provenance provenance) {
  const Index n = candidates.size();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  Design d;
  d.provenance = provenance;
  d.indices.assign(indices.begin(), indices.end());
  d.coords.resize(static_cast<Index>(indices.size()), candidates.dim());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const Index id = indices[r];
    if (id < 0 || id >= n)
      throw InvalidArgument("design index " + std::to_string(id) +
                            " is out of range");
    if (seen[static_cast<std::size_t>(id)]++)
      throw InvalidArgument("design index " + std::to_string(id) +
                            " appears twice");
    d.coords.row(static_cast<Index>(r)) = candidates.point(id);
  }
  return d;
}

} // namespace dppdesign
