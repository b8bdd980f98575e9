#include <cmath>

#include "akf/errors.hpp"
#include "akf/special.hpp"
#include "doctest.h"

using akf::BoundedValue;
using akf::tail_power_sum;
using akf::zeta;

namespace {

// Independent oracle: direct summation of the first N terms plus the
// integral bracket for the rest. No Euler-Maclaurin anywhere in here.
BoundedValue brute_tail(std::uint64_t from, double p, std::uint64_t terms) {
  double sum = 0.0, comp = 0.0;
  std::uint64_t last = from + terms - 1;
  for (std::uint64_t k = from; k <= last; ++k) {
    double x = std::pow(static_cast<double>(k), -p);
    double t = sum + x;
    comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double lo = std::pow(static_cast<double>(last + 1), 1.0 - p) / (p - 1.0);
  double hi = std::pow(static_cast<double>(last), 1.0 - p) / (p - 1.0);
  double mid = sum + comp + 0.5 * (lo + hi);
  return {mid, 0.5 * (hi - lo) + 1e-13};  // compensated sum; 1e-13 is generous
}

bool overlap(const BoundedValue& a, const BoundedValue& b) {
  return a.lower() <= b.upper() && b.lower() <= a.upper();
}

}  // namespace

TEST_CASE("zeta closed forms") {
  const double pi = 3.14159265358979323846;
  BoundedValue z2 = zeta(2.0, 1e-12);
  CHECK(std::abs(z2.value - pi * pi / 6.0) <= 1e-12);
  CHECK(z2.abs_error <= 1e-12);

  BoundedValue z4 = zeta(4.0, 1e-12);
  CHECK(std::abs(z4.value - pi * pi * pi * pi / 90.0) <= 1e-12);
  CHECK(z4.abs_error <= 1e-12);
}

TEST_CASE("zeta(3) against the brute-force oracle") {
  BoundedValue z3 = zeta(3.0, 1e-12);
  // frozen from the oracle run (1e7 terms + integral bracket)
  CHECK(z3.value == doctest::Approx(1.2020569031595943).epsilon(1e-13));
  BoundedValue oracle = brute_tail(1, 3.0, 10'000'000);
  CHECK(overlap(z3, oracle));
}

TEST_CASE("zeta rejects the pole neighborhood and bad tolerances") {
  CHECK_THROWS_AS(zeta(1.0, 1e-9), akf::numeric_error);
  CHECK_THROWS_AS(zeta(1.0 + 1e-10, 1e-9), akf::numeric_error);
  CHECK_THROWS_AS(zeta(0.5, 1e-9), akf::numeric_error);
  CHECK_THROWS_AS(zeta(2.0, 0.0), akf::numeric_error);
  CHECK_NOTHROW(zeta(1.0 + 2e-9, 1e-9));
}

TEST_CASE("zeta handles large arguments") {
  BoundedValue z = zeta(500.0, 1e-15);
  CHECK(z.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::isfinite(z.abs_error));
  BoundedValue zbig = zeta(2e6, 1e-15);
  CHECK(zbig.value == doctest::Approx(1.0));
  CHECK(std::isfinite(zbig.abs_error));
}

TEST_CASE("tail_power_sum basics") {
  BoundedValue t0 = tail_power_sum(0, 2.0, 1e-12);
  BoundedValue z2 = zeta(2.0, 1e-12);
  CHECK(std::abs(t0.value - z2.value) <= t0.abs_error + z2.abs_error);

  BoundedValue t1 = tail_power_sum(1, 2.0, 1e-12);
  CHECK(std::abs(t1.value - (z2.value - 1.0)) <= 1e-12);

  BoundedValue t100 = tail_power_sum(100, 3.0, 1e-12);
  // frozen from the oracle (terms 101.. plus integral bracket)
  CHECK(t100.value == doctest::Approx(4.9502499916675e-05).epsilon(1e-9));
  CHECK(overlap(t100, brute_tail(101, 3.0, 10'000'000)));
}

TEST_CASE("tail integral bracket invariant") {
  for (double p : {1.5, 2.0, 3.5, 7.0}) {
    for (std::uint64_t K : {1ull, 5ull, 100ull, 10'000ull}) {
      BoundedValue t = tail_power_sum(K, p, 1e-13);
      double lo = std::pow(static_cast<double>(K + 1), 1.0 - p) / (p - 1.0);
      double hi = std::pow(static_cast<double>(K), 1.0 - p) / (p - 1.0);
      CHECK(t.upper() >= lo);
      CHECK(t.lower() <= hi);
    }
  }
}

TEST_CASE("tail monotone in K and p") {
  double prev = tail_power_sum(1, 2.5, 1e-13).value;
  for (std::uint64_t K : {2ull, 4ull, 16ull, 256ull}) {
    double cur = tail_power_sum(K, 2.5, 1e-13).value;
    CHECK(cur < prev);
    prev = cur;
  }
  prev = tail_power_sum(10, 1.5, 1e-13).value;
  for (double p : {2.0, 2.5, 3.0, 4.0}) {
    double cur = tail_power_sum(10, p, 1e-13).value;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("prefix plus tail reproduces zeta") {
  for (double p : {1.2, 2.0, 3.0, 11.0}) {
    for (std::uint64_t K : {1ull, 7ull, 1000ull}) {
      double prefix = 0.0;
      for (std::uint64_t k = 1; k <= K; ++k) {
        prefix += std::pow(static_cast<double>(k), -p);
      }
      BoundedValue t = tail_power_sum(K, p, 1e-13);
      BoundedValue z = zeta(p, 1e-13);
      CHECK(std::abs(prefix + t.value - z.value) <=
            t.abs_error + z.abs_error + 1e-12);
    }
  }
}
