#pragma once

#include <stdexcept>
#include <string>

namespace knomial {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotCoprime : public Error {
 public:
  NotCoprime(long long a, long long m)
      : Error("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m)),
        value(a),
        modulus(m) {}
  long long value;
  long long modulus;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class DimMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class BetaNotCoprime : public Error {
 public:
  using Error::Error;
};

class NotAntisymplectic : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// Raised by the block verifier. The coordinates name the offending block
/// (block row, block column) in the lexicographic (r,s) order; -1 when the
/// failure is a whole block row or column with no surviving block.
class NotKNomial : public Error {
 public:
  NotKNomial(const std::string& what, int block_row, int block_col)
      : Error(what), row(block_row), col(block_col) {}
  int row;
  int col;
};

}  // namespace knomial
