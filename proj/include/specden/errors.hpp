#pragma once

#include <stdexcept>
#include <string>

namespace specden {

// Error taxonomy. Each class maps to a distinct failure mode so callers
// (and the CLI exit-code logic) can tell configuration mistakes apart from
// runtime numerical trouble.

// Bad user input: unparseable config, unknown keys, out-of-range arguments.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched shard layouts or dimensions between operands.
struct layout_error : std::runtime_error {
  explicit layout_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument values (non-finite scale factor, bad index, ...).
struct argument_error : std::runtime_error {
  explicit argument_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: non-finite recurrence scalars, failed residual checks.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// API misuse: querying state that was never computed (e.g. a basis that was
// not stored).
struct state_error : std::runtime_error {
  explicit state_error(const std::string& what) : std::runtime_error(what) {}
};

// Worker-pool protocol violations (missing partial, message after shutdown).
struct protocol_error : std::runtime_error {
  explicit protocol_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace specden
