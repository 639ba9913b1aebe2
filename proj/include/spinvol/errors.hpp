#pragma once

#include <stdexcept>
#include <string>

namespace spinvol {

/// Input outside the mathematical domain of an operation (broken triangle,
/// open quadrilateral, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Malformed textual input.
class ParseError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A brute-force oracle asked to work beyond its desk-scale bound.
class RefusalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Iterative solver did not converge within its iteration cap.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace spinvol
