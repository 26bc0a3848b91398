#pragma once

#include <stdexcept>
#include <string>

namespace locps {

/// An enumeration or size guard was exceeded (e.g. too many principal minors).
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A pivot block that has to be inverted is singular.
class SingularBlock : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The symmetric eigensolver did not converge.
class EigenFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampler could not produce enough accepted matrices.
class SamplerExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace locps
