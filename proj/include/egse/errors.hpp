#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace egse {

// A parameter combination violates a documented precondition.
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Min-max normalization over a store whose values are all equal.
class DegenerateRange : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument outside the support of a distribution function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An EGSE-B session has no unexplored objects left, or was already terminated.
class SessionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two exact evaluations of the same first-passage quantity disagree.
class AnalyticInconsistency : public std::runtime_error {
 public:
  AnalyticInconsistency(std::uint64_t presentation, const std::string& what)
      : std::runtime_error(what + " (presentation " + std::to_string(presentation) + ")"),
        presentation_(presentation) {}

  std::uint64_t presentation() const noexcept { return presentation_; }

 private:
  std::uint64_t presentation_;
};

}  // namespace egse
