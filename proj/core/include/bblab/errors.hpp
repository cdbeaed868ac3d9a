#pragma once

#include <stdexcept>
#include <string>

namespace bblab {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violates a mathematical precondition (negative value, weight
// outside (0,1), zero mass, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A memory/dimension guard was hit (n*q too large, refinement above 16, ...).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Two grids or voxel sets do not live on compatible lattices.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input (JSON grid/voxel documents).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened for reading or writing.
class FileError : public Error {
 public:
  using Error::Error;
};

}  // namespace bblab
