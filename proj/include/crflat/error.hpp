#pragma once

#include <stdexcept>
#include <string>

namespace crflat {

enum class ErrorKind {
  NonUnitConstantTerm,     // division by a series whose constant term vanishes
  NonPositiveConstantTerm, // square root / log of a series without positive constant
  NotReal,                 // operation requires a real series
  OrderExhausted,          // no truncation order left for a derivative
  NonConjugatePoint,       // evaluation point off the real locus
  TwoDegenerate,           // S vanishes at the origin
  IndeterminateTerm,       // S1 neither identically zero nor invertible
  RhoNotInDisk,            // |rho(0)| not strictly inside the unit disk
  RhoCritical,             // rho'(0) = 0
  OrderMismatch,           // seed order exceeds metric order
  ZeroScale,               // rescaling by w0 = 0
  NotInModelForm,          // germ is not of the rigid model shape
  InvariantViolation,      // model-data invariants fail
  QuadratureDegenerate,    // probe point too close to the integration boundary
  ValidationError,         // bad user input (orders, radii, resolutions, ...)
  IoError,                 // file or parse failure
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace crflat
