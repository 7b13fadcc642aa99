// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qop {

// Input lies outside the mathematical domain of an operation
// (non-PSD state, negative weight, coefficient out of range, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Structurally malformed value: wrong shape, inconsistent sizes, bad encoding.
class StructuralError : public std::invalid_argument {
 public:
  explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
};

// A basis coefficient left [0, 1]; carries the offending diagonal position.
class CoefficientRangeError : public DomainError {
 public:
  CoefficientRangeError(const std::string& what, std::size_t position, double value)
      : DomainError(what), position_(position), value_(value) {}
  std::size_t position() const noexcept { return position_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t position_;
  double value_;
};

// A monomial exponent exceeds the requested expansion degree.
class DegreeError : public DomainError {
 public:
  explicit DegreeError(const std::string& what) : DomainError(what) {}
};

// Request exceeds a configured capability limit (dimension or degree cap).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Degree escalation hit the cap; carries the best attempt for diagnostics.
class SynthesisLimitError : public CapabilityError {
 public:
  SynthesisLimitError(const std::string& what, int best_k, double best_error)
      : CapabilityError(what), best_k_(best_k), best_error_(best_error) {}
  int best_k() const noexcept { return best_k_; }
  double best_error() const noexcept { return best_error_; }

 private:
  int best_k_;
  double best_error_;
};

}  // namespace qop
