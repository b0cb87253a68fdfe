#pragma once

#include <stdexcept>
#include <string>

namespace derivkit {

/// Malformed input text or JSON. The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated (dimension mismatch, non-unital
/// algebra, polynomial not vanishing on the diagonal, ...). Exit code 3.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a result that must hold by construction fails to hold.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace derivkit
