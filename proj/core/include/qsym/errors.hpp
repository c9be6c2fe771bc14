#pragma once

#include <stdexcept>
#include <string>

namespace qsym {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical procedure failed to reach its stated accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The grid cannot resolve the domain (disconnected mask, ambiguous cuts).
class GridTooCoarse : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The minimum of the torsion function sits on the boundary ring of the grid.
class DegenerateGeometry : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Too few usable points for a log-log regression.
class FitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsym
