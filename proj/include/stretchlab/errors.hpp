#pragma once

#include <stdexcept>

namespace stretchlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// numerics
struct DomainError : Error { using Error::Error; };
struct CancellationError : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };

// halfplane
struct IndeterminateError : Error { using Error::Error; };

// cylinder
struct InvalidCylinder : Error { using Error::Error; };

// stretch
struct UnknownComponent : Error { using Error::Error; };
struct ProportionalWeights : Error { using Error::Error; };
struct EmptySelection : Error { using Error::Error; };

// cli
struct ParseError : Error { using Error::Error; };
struct InvariantError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace stretchlab
