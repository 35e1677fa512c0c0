#pragma once

#include <stdexcept>
#include <string>

namespace catlab {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The superposition vanishes (N_psi^2 <= 1e-14); the state is undefined.
class DegenerateCat : public Error {
 public:
  using Error::Error;
};

/// The Fock basis is too small for the requested state; raise the dimension.
class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The rational closed form of I_{+-,j} sits on its pole; use the limiting value.
class ResonantDenominator : public Error {
 public:
  using Error::Error;
};

class LogBranchDegenerate : public Error {
 public:
  using Error::Error;
};

class InvalidClass : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

class EmptyTable : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace catlab
