#pragma once

#include <stdexcept>
#include <string>

namespace oddsym {

// A mathematical precondition was violated: dimension mismatch, inverse of a
// non-unit, truncation floor too shallow for the requested functional, and so
// on.  The CLI maps this to exit code 2.
class precondition_error : public std::domain_error {
 public:
  explicit precondition_error(const std::string& what) : std::domain_error(what) {}
};

// Malformed textual input: scalar grammar, symbol/rho/path files.  The CLI
// maps this to exit code 3.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oddsym
