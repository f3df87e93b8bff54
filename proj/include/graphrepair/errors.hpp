#pragma once

#include <stdexcept>
#include <string>

namespace graphrepair {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("inverse of zero in finite field") {}
};

class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix() : std::runtime_error("matrix is singular") {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Parameters that violate a construction's preconditions.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Graph structure unsuitable for the requested operation (disconnected, wrong topology).
class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class RetriesExhausted : public std::runtime_error {
 public:
  explicit RetriesExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Problem exceeds a documented size cap.
class SizeLimitExceeded : public std::runtime_error {
 public:
  explicit SizeLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graphrepair
