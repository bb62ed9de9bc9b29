#pragma once

#include <stdexcept>
#include <string>

namespace e2qes {

/// Input violates a documented precondition (wrong class, bad parameter range, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed or left its tolerance envelope.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed expression strings, JSON documents or configs.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace e2qes
