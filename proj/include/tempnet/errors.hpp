// Error taxonomy shared by every module. The CLI maps each class to an exit code.
#pragma once

#include <stdexcept>
#include <string>

namespace tempnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid input (exit 2).
class InputError : public Error {
 public:
  using Error::Error;
};

// Input uses a construct the requested operation does not handle (exit 2).
class UnsupportedFeatureError : public InputError {
 public:
  using InputError::InputError;
};

// A precondition on a well-formed value was not met, e.g. a network that is
// not well-defined handed to the DC pipeline (exit 2).
class ContractError : public InputError {
 public:
  using InputError::InputError;
};

// A configured size or time cap was hit (exit 3).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Something that must never happen did (exit 4).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace tempnet
