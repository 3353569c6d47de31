#ifndef DPPDESIGN_ERROR_HPP
#define DPPDESIGN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dppdesign {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Two candidate points have identical coordinates.
class DuplicateCandidateError : public InvalidArgument {
public:
  DuplicateCandidateError(std::ptrdiff_t first, std::ptrdiff_t second);

  std::ptrdiff_t first() const noexcept { return first_; }
  std::ptrdiff_t second() const noexcept { return second_; }

private:
  std::ptrdiff_t first_;
  std::ptrdiff_t second_;
};

/// Requested cardinality is outside [0, N] (or [1, N]).
class CardinalityError : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// A numeric input lies outside its mathematical domain (e.g. negative eigenvalue).
class DomainError : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// A kernel has an eigenvalue below the PSD tolerance.
class NotPsdError : public Error {
public:
  explicit NotPsdError(double eigenvalue);

  double eigenvalue() const noexcept { return eigenvalue_; }

private:
  double eigenvalue_;
};

/// Schur-complement conditioning failed even after jitter escalation.
class ConditioningError : public Error {
public:
  using Error::Error;
};

/// A sampler reached a numerically degenerate state.
class SamplerError : public Error {
public:
  using Error::Error;
};

/// Not enough unexcluded candidates remain for a sequential batch.
class CapacityError : public Error {
public:
  CapacityError(std::size_t batch, std::size_t required, std::size_t available);

  std::size_t batch() const noexcept { return batch_; }

private:
  std::size_t batch_;
};

} // namespace dppdesign

#endif // DPPDESIGN_ERROR_HPP
