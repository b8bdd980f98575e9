#include <cmath>

#include "akf/errors.hpp"
#include "akf/montecarlo.hpp"
#include "akf/rng.hpp"
#include "akf/oracle.hpp"
#include "akf/special.hpp"
#include "doctest.h"

using namespace akf;

namespace {

ParameterFamily unit_family(double alpha = 0.0) {
  return ParameterFamily{SequenceRule::constant(alpha),
                         SequenceRule::constant(1.0),
                         SequenceRule::constant(2.0)};
}

}  // namespace

TEST_CASE("same seed, same sample") {
  FieldSample a = sample_field(unit_family(0.5), 2, 16, 12345);
  FieldSample b = sample_field(unit_family(0.5), 2, 16, 12345);
  CHECK(a.coefficients == b.coefficients);
  FieldSample c = sample_field(unit_family(0.5), 2, 16, 12346);
  CHECK(a.coefficients != c.coefficients);
}

TEST_CASE("zero alpha pins the constant coefficient at zero") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FieldSample s = sample_field(unit_family(0.0), 2, 8, seed);
    CHECK(s.coefficient(EigenLabel::constant()) == 0.0);
  }
}

TEST_CASE("coefficient variance matches the eigenvalue") {
  // sample variance of the (1,1,cos) coefficient over many seeds; its
  // sampling distribution has std error beta * sqrt(2/N)
  const std::uint64_t N = 100'000;
  const double beta = 1.0;
  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t i = 0; i < N; ++i) {
    FieldSample s = sample_field(unit_family(), 1, 2, derive_stream_seed(7, i));
    double c = s.coefficient(EigenLabel::oscillatory(1, 1, Parity::Cos));
    sum += c;
    sumsq += c * c;
  }
  double var = sumsq / N - (sum / N) * (sum / N);
  double se = beta * std::sqrt(2.0 / static_cast<double>(N));
  CHECK(std::abs(var - beta) <= 3.0 * se);
}

TEST_CASE("squared norm decomposes across coordinates") {
  ParameterFamily fam{SequenceRule::constant(1.0), SequenceRule::constant(1.0),
                      SequenceRule::constant(2.0)};
  FieldSample s = sample_field(fam, 2, 32, 99);
  double total = 0.0;
  for (double c : s.coefficients) total += c * c;
  double constant = s.coefficient(EigenLabel::constant());
  double per_coord[2] = {0.0, 0.0};
  for (std::uint64_t j = 1; j <= 2; ++j) {
    for (std::uint64_t k = 1; k <= 32; ++k) {
      double ccos = s.coefficient(EigenLabel::oscillatory(j, k, Parity::Cos));
      double csin = s.coefficient(EigenLabel::oscillatory(j, k, Parity::Sin));
      per_coord[j - 1] += ccos * ccos + csin * csin;
    }
  }
  CHECK(total ==
        doctest::Approx(constant * constant + per_coord[0] + per_coord[1]));
}

TEST_CASE("projection residual: boundary ranks") {
  // n = 0 recovers the truncated trace on average; n = everything gives 0
  ProjectionError full =
      empirical_projection_error(unit_family(), 1, 64, 0, 2000, 5);
  BoundedValue tr = trace(unit_family(), 1);
  BoundedValue rem = tail_power_sum(64, 2.0, 1e-13);
  double truncated_trace = tr.value - 2.0 * rem.value;
  CHECK(std::abs(full.mean_sq_error - truncated_trace) <=
        3.0 * full.std_error);

  // n = 16 projects out every nonzero-variance label (alpha = 0 leaves the
  // constant coefficient identically zero)
  ProjectionError none =
      empirical_projection_error(unit_family(), 1, 8, 16, 100, 5);
  CHECK(none.mean_sq_error == 0.0);
}

TEST_CASE("projection residual matches the analytic tail") {
  // d=1, beta=1, sigma=2, K=1000, n=2: tail(2) = pi^2/3 - 2, minus the
  // truncation remainder
  const std::uint64_t K = 1000;
  ProjectionError est =
      empirical_projection_error(unit_family(), 1, K, 2, 10'000, 42);
  BoundedValue tr = trace(unit_family(), 1);
  BoundedValue rem = tail_power_sum(K, 2.0, 1e-13);
  double lo = (tr.lower() - 2.0) - 2.0 * rem.upper();
  double hi = (tr.upper() - 2.0) - 2.0 * rem.lower();
  CHECK(est.mean_sq_error + 3.0 * est.std_error >= lo);
  CHECK(est.mean_sq_error - 3.0 * est.std_error <= hi);
}

TEST_CASE("estimates are identical across worker counts") {
  ProjectionError serial =
      empirical_projection_error(unit_family(), 2, 32, 5, 3000, 11, 1);
  ProjectionError parallel =
      empirical_projection_error(unit_family(), 2, 32, 5, 3000, 11, 4);
  CHECK(serial.mean_sq_error == parallel.mean_sq_error);
  CHECK(serial.std_error == parallel.std_error);
}

TEST_CASE("argument guards") {
  CHECK_THROWS_AS(empirical_projection_error(unit_family(), 1, 8, 17, 0, 1),
                  validation_error);
  CHECK_THROWS_AS(empirical_projection_error(unit_family(), 1, 8, 20, 10, 1),
                  validation_error);  // n beyond 1 + 2dK
  CHECK_THROWS_AS(sample_field(unit_family(), 1, 0, 1), validation_error);
}
