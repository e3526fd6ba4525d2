#pragma once

#include <stdexcept>
#include <string>

namespace barw {

// Invalid argument or parameter outside the model's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A linear solve did not reach the required harmonicity residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double achieved_residual)
      : std::runtime_error(what), residual_(achieved_residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Tilted kernel rows failed to sum to one; the source profile is bad.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Native floating point overflowed while solving for expected times.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(const std::string& what, int state)
      : std::overflow_error(what), state_(state) {}
  int state() const noexcept { return state_; }

 private:
  int state_;
};

// A Monte Carlo trial hit the internal step cap.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed profile cache file.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cache file exists for the key but its header disagrees with it.
class CacheMismatchError : public CacheError {
 public:
  using CacheError::CacheError;
};

}  // namespace barw
