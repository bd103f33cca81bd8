#pragma once

#include <stdexcept>

namespace odious {

/// Thrown when a linear-time oracle is asked for a bound it refuses to enumerate.
class OracleRangeExceeded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace odious
