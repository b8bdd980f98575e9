#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace akf {

// A value together with a rigorous absolute error bound: the true quantity
// lies in [value - abs_error, value + abs_error]. Arithmetic on BoundedValue
// widens the bound by a conservative 2-ulp slack per operation, so brackets
// stay valid under double rounding.
struct BoundedValue {
  double value = 0.0;
  double abs_error = 0.0;

  double lower() const { return value - abs_error; }
  double upper() const { return value + abs_error; }

  static BoundedValue exact(double v) { return {v, 0.0}; }
  static BoundedValue from_interval(double lo, double hi) {
    return {0.5 * (lo + hi), 0.5 * (hi - lo) + std::abs(lo) * kUlp};
  }

  static constexpr double kUlp = 2.0 * std::numeric_limits<double>::epsilon();
};

inline double fp_slack(double v) { return std::abs(v) * BoundedValue::kUlp; }

inline BoundedValue operator+(BoundedValue a, BoundedValue b) {
  double v = a.value + b.value;
  return {v, a.abs_error + b.abs_error + fp_slack(v)};
}

inline BoundedValue operator-(BoundedValue a, BoundedValue b) {
  double v = a.value - b.value;
  return {v, a.abs_error + b.abs_error + fp_slack(v)};
}

// s * x for an exact scalar s.
inline BoundedValue scale(BoundedValue x, double s) {
  double v = s * x.value;
  return {v, std::abs(s) * x.abs_error + fp_slack(v)};
}

// sqrt of a nonnegative-valued bracket (lower end clamped at 0).
inline BoundedValue sqrt_bounded(BoundedValue x) {
  double lo = std::sqrt(std::max(0.0, x.lower()));
  double hi = std::sqrt(std::max(0.0, x.upper()));
  BoundedValue r = BoundedValue::from_interval(lo, hi);
  r.abs_error += fp_slack(hi);
  return r;
}

// x^e for x >= 0 and e > 0 (monotone on the bracket).
inline BoundedValue pow_bounded(BoundedValue x, double e) {
  double lo = std::pow(std::max(0.0, x.lower()), e);
  double hi = std::pow(std::max(0.0, x.upper()), e);
  BoundedValue r = BoundedValue::from_interval(lo, hi);
  r.abs_error += 2.0 * fp_slack(hi);
  return r;
}

}  // namespace akf
