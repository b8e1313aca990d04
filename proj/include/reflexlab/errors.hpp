#pragma once

#include <stdexcept>
#include <string>

namespace reflexlab {

/// Malformed or inconsistent input (bad generator file, degree mismatch,
/// a set that is not a subgroup, ...). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap was exceeded. The CLI maps this to exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency assertion of the model failed. This is never
/// expected; it indicates a wiring bug rather than a false identity.
class ModelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace reflexlab
