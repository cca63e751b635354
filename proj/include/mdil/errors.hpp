#pragma once

#include <stdexcept>
#include <string>

namespace mdil {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input relation has a directed cycle (or a self-pair).
struct CycleError : Error {
  using Error::Error;
};

// An id or parameter is outside its allowed range.
struct RangeError : Error {
  using Error::Error;
};

// Sets that must be disjoint overlap.
struct OverlapError : Error {
  using Error::Error;
};

// An operation that needs a nonempty input got an empty one.
struct EmptyError : Error {
  using Error::Error;
};

// A strict-mode entry condition failed; message names each violated inequality.
struct PreconditionError : Error {
  using Error::Error;
};

// Ground set too small for a threshold that divides by ln|Q| (requires |Q| >= 2).
struct DegenerateError : Error {
  using Error::Error;
};

// Blocks that must partition a ground set do not.
struct PartitionError : Error {
  using Error::Error;
};

// The instance cannot support the requested extraction at this size.
struct InstanceTooSmall : Error {
  int level = 0;  // 0 = single-order driver; >=1 names the multiorder level
  InstanceTooSmall(const std::string& msg, int lvl = 0) : Error(msg), level(lvl) {}
};

// Posets passed together do not share a ground set size.
struct GroundMismatch : Error {
  using Error::Error;
};

// Input exceeds the documented size cap of an exhaustive oracle.
struct TooLargeError : Error {
  using Error::Error;
};

// A generator spec is malformed.
struct SpecError : Error {
  using Error::Error;
};

// A poset or result file cannot be parsed.
struct ParseError : Error {
  using Error::Error;
};

// An always-on internal invariant failed; indicates a bug, never user error.
struct VerificationError : Error {
  using Error::Error;
};

}  // namespace mdil
