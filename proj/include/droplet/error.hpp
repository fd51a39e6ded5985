#pragma once

#include <stdexcept>
#include <string>

namespace droplet {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or evaluation at a singular point of a potential or map.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation requested in a regime (post-/pre-critical) where it is not defined.
class PhaseError : public Error {
 public:
  using Error::Error;
};

// The excluded disk is not contained in the ellipse.
class ContainmentViolated : public Error {
 public:
  using Error::Error;
};

// A point lies within the boundary tolerance band, so an inside/outside
// decision cannot be made.
class BoundaryAmbiguity : public Error {
 public:
  using Error::Error;
};

class NoValidRoot : public Error {
 public:
  using Error::Error;
};

// Evaluation too close to a branch cut.
class ProximityError : public Error {
 public:
  using Error::Error;
};

// A region was passed together with parameters of a different phase.
class PhaseMismatch : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

}  // namespace droplet
