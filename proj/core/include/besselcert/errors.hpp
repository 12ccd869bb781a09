#pragma once

#include <stdexcept>
#include <string>

namespace besselcert {

/// Thrown when an argument violates a precondition (order guard, domain, config range).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a series evaluation cannot certify the requested tolerance
/// (term cap reached, or the truncation bound stalls above the target).
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace besselcert
