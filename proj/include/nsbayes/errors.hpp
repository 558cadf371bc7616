#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nsbayes {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroDivision : public Error {
 public:
  ZeroDivision() : Error("division by zero") {}
};

class NotNearStandard : public Error {
 public:
  using Error::Error;
};

class NotInfinite : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class MalformedProblem : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class SupportMismatch : public Error {
 public:
  using Error::Error;
};

class WeightError : public Error {
 public:
  using Error::Error;
};

class NoEmbedding : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class BadProbe : public Error {
 public:
  using Error::Error;
};

// Input documents that do not follow the JSON schemas.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Raised when an LP result fails independent re-verification. Never expected.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace nsbayes
