#include "dppdesign/error.hpp"

namespace dppdesign {

DuplicateCandidateError::DuplicateCandidateError(std::ptrdiff_t first,
                                                 std::ptrdiff_t second)
    : InvalidArgument("duplicate candidate points at indices " +
                      std::to_string(first) + " and " + std::to_string(second)),
      first_(first), second_(second) {}

NotPsdError::NotPsdError(double eigenvalue)
    : Error("kernel not PSD: eigenvalue " + std::to_string(eigenvalue) +
            " is below -1e-8"),
      eigenvalue_(eigenvalue) {}

CapacityError::CapacityError(std::size_t batch, std::size_t required,
                             std::size_t available)
    : Error("batch " + std::to_string(batch) + " needs " +
            std::to_string(required) + " candidates but only " +
            std::to_string(available) + " remain after exclusion"),
      batch_(batch) {}

} // namespace dppdesign
