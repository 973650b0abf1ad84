#pragma once

#include <stdexcept>
#include <string>

namespace tdp {

// Base of every error the library raises on a contract violation it can detect.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix that had to be inverted has determinant zero.
class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("matrix is singular") {}
  explicit SingularMatrix(const std::string& what) : Error(what) {}
};

// Operands were built over different (prime, dim) pairs.
class ParamsMismatch : public Error {
 public:
  using Error::Error;
};

class RoleMismatch : public Error {
 public:
  using Error::Error;
};

class BlockTooLong : public Error {
 public:
  using Error::Error;
};

// A decrypted block does not decode to a padded byte block.
class ValueOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotUnitOrder : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class ParamsTooLarge : public Error {
 public:
  using Error::Error;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

// Malformed key file: bad magic, unknown record type, truncated, entry >= p.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tdp
