#pragma once

#include <stdexcept>
#include <string>

namespace akf {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad inputs: invalid family descriptors, out-of-range arguments,
// tabulated rules queried beyond their table.
class validation_error : public error {
 public:
  using error::error;
};

// Numeric domain problems: zeta pole proximity, divergent tau-sums,
// certification machinery running out of room.
class numeric_error : public error {
 public:
  using error::error;
};

}  // namespace akf
