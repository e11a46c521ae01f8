#pragma once

#include <stdexcept>
#include <string>

namespace extremal {

// A space failed a metric or measure axiom at construction time.
struct SpaceValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration or construction would exceed its configured cap.
struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed user input: CLI flags, selectors, space files.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace extremal
