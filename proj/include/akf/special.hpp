#pragma once

#include <cstdint>

#include "akf/bounded.hpp"

namespace akf {

// Arguments this close to the divergence at p = 1 are rejected outright;
// families whose sigma_1 falls below 1 + kZetaPoleGuard fail validation.
inline constexpr double kZetaPoleGuard = 1e-9;

// Riemann zeta for real p > 1 + kZetaPoleGuard. Partial sum plus
// Euler-Maclaurin correction; the truncation error is kept <= tol and the
// reported abs_error additionally covers floating-point slack (which can
// exceed tol only when tol is below the double-precision floor for that p).
BoundedValue zeta(double p, double tol);

// Sum_{k=K+1..inf} k^{-p}, certified the same way.
// tail_power_sum(0, p, tol) agrees with zeta(p, tol) within combined bounds.
BoundedValue tail_power_sum(std::uint64_t K, double p, double tol);

}  // namespace akf
