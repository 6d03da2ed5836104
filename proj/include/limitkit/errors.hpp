#pragma once

#include <stdexcept>
#include <string>

namespace limitkit {

// Malformed input: bad syntax, unknown generator, arity mismatch. CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input that violates an operation's mathematical precondition
// (non-commuting images, a twist element outside the edge centralizer, ...).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace limitkit
