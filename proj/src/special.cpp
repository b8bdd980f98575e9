#include "akf/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "akf/errors.hpp"
#include "akf/util.hpp"

namespace akf {

namespace {

// Euler-Maclaurin for f(x) = x^{-p}, p > 1:
//
//   sum_{k=a}^{inf} k^{-p} = a^{1-p}/(p-1) + a^{-p}/2
//                          + sum_{j=1}^{5} B_{2j}/(2j)! (p)_{2j-1} a^{1-p-2j}
//                          + R
//
// with (p)_m the rising factorial and |R| <= 2 |B_10|/10! (p)_9 a^{-p-9}
// (periodic-Bernoulli kernel bound, doubled for safety). The start a is
// chosen so the remainder bound meets the requested tolerance; everything
// below a is summed directly with compensation.
constexpr double kEmCoeff[5] = {
    1.0 / 12.0,          // B2 / 2!
    -1.0 / 720.0,        // B4 / 4!
    1.0 / 30240.0,       // B6 / 6!
    -1.0 / 1209600.0,    // B8 / 8!
    1.0 / 47900160.0,    // B10 / 10!
};

double rising_factorial(double p, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= p + i;
  return r;
}

double em_remainder_bound(double a, double p) {
  double t = std::pow(a, 1.0 - p - 10.0);
  if (t == 0.0) return 0.0;
  return 2.0 * kEmCoeff[4] * rising_factorial(p, 9) * t;
}

std::uint64_t em_start_for(double p, double tol) {
  // Solve 2|B10|/10! (p)_9 a^{1-p-10} <= tol for a, in logs to dodge
  // overflow near the pole and for very large p.
  double ln_num = std::log(2.0 * kEmCoeff[4]);
  for (int i = 0; i < 9; ++i) ln_num += std::log(p + i);
  double ln_a = (ln_num - std::log(tol)) / (p + 9.0);
  if (!(ln_a > 0.0)) return 2;
  double a = std::ceil(std::exp(ln_a));
  if (!(a >= 2.0)) return 2;
  if (a > 1e7) throw numeric_error("zeta: tolerance unreachable");
  return static_cast<std::uint64_t>(a);
}

BoundedValue power_tail_from(std::uint64_t start, double p, double tol) {
  double tol_trunc = std::max(tol * 0.5, 5e-324);
  std::uint64_t a = std::max(start, em_start_for(p, tol_trunc));

  CompensatedSum acc;
  for (std::uint64_t k = start; k < a; ++k) {
    acc.add(std::pow(static_cast<double>(k), -p));
  }

  const double da = static_cast<double>(a);
  const double a1p = std::pow(da, 1.0 - p);
  acc.add(a1p / (p - 1.0));
  acc.add(0.5 * std::pow(da, -p));

  double rising = p;             // (p)_{2j-1}, built incrementally
  double apow = a1p / (da * da); // a^{1-p-2j}
  for (int j = 1; j <= 5; ++j) {
    if (apow == 0.0) break;
    acc.add(kEmCoeff[j - 1] * rising * apow);
    if (j < 5) {
      rising *= (p + 2.0 * j - 1.0) * (p + 2.0 * j);
      apow /= da * da;
    }
  }

  double err = em_remainder_bound(da, p) + acc.rounding_bound();
  return {acc.value(), err};
}

void require_off_pole(double p) {
  if (!(p > 1.0 + kZetaPoleGuard)) {
    throw numeric_error("zeta: p = " + format_double(p) +
                        " is at or too close to the pole at 1");
  }
}

}  // namespace

BoundedValue zeta(double p, double tol) {
  require_off_pole(p);
  if (!(tol > 0.0)) throw numeric_error("zeta: tolerance must be positive");
  return power_tail_from(1, p, tol);
}

BoundedValue tail_power_sum(std::uint64_t K, double p, double tol) {
  require_off_pole(p);
  if (!(tol > 0.0)) throw numeric_error("tail_power_sum: tolerance must be positive");
  return power_tail_from(K + 1, p, tol);
}

}  // namespace akf
