#pragma once

#include <stdexcept>
#include <string>

namespace qsk {

// Bad user input: malformed text, invalid families, out-of-range arguments.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A violated internal invariant. Never caused by input alone.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace qsk
