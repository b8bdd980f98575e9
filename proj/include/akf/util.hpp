#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

namespace akf {

// Neumaier compensated summation. Tracks the running sum of |terms| so a
// rigorous rounding bound can be attached to the final value.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += std::abs(x);
  }

  double value() const { return sum_ + comp_; }
  double abs_sum() const { return abs_sum_; }

  // Conservative bound on the accumulated floating-point error.
  double rounding_bound() const {
    return 4.0 * std::numeric_limits<double>::epsilon() * abs_sum_;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_sum_ = 0.0;
};

// Fixed 15-significant-digit rendering used by every CSV/JSON emitter, so
// outputs are byte-identical across runs.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

}  // namespace akf
