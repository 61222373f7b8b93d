#pragma once

#include <stdexcept>
#include <string>

namespace specsim {

// Raised when an input exceeds a documented size limit rather than silently
// running for an unbounded time.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal cross-check fails; indicates a bug, not bad input.
class InternalInconsistency : public std::logic_error {
 public:
  explicit InternalInconsistency(const std::string& what) : std::logic_error(what) {}
};

}  // namespace specsim
