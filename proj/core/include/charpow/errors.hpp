#pragma once

#include <stdexcept>
#include <string>

namespace charpow {

// Raised when an operation would need torsion beyond the context level N
// (the engine never truncates silently).
struct precision_error : std::runtime_error {
  explicit precision_error(std::string const &msg) : std::runtime_error(msg) {}
};

// Raised when a configurable size cap (group order, enumeration size, ...) is hit.
struct cap_error : std::runtime_error {
  explicit cap_error(std::string const &msg) : std::runtime_error(msg) {}
};

// Raised on malformed user input: bad group spec, bad file, bad parameters.
struct usage_error : std::runtime_error {
  explicit usage_error(std::string const &msg) : std::runtime_error(msg) {}
};

// Raised when an internal invariant fails; indicates a bug, not bad input.
struct internal_error : std::logic_error {
  explicit internal_error(std::string const &msg) : std::logic_error(msg) {}
};

}  // namespace charpow
