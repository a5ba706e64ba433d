#ifndef SPLBOARD_ERROR_HPP
#define SPLBOARD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace splboard {

// Base of every error raised by the library. The CLI maps these to exit 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a caller violates a documented precondition (bad parameter
// ranges, unknown labels, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace splboard

#endif  // SPLBOARD_ERROR_HPP
