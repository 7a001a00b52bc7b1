#pragma once

#include <stdexcept>
#include <string>

namespace jackdiv {

// A parameter lies outside the region where a formula or series is defined.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// The request is well-posed mathematically but the library does not support
// it (octonion sampling, non-integer truncation index, ...).
class UnsupportedError : public std::invalid_argument {
 public:
  explicit UnsupportedError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace jackdiv
