#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "akf/bounded.hpp"
#include "akf/complexity.hpp"
#include "akf/params.hpp"
#include "akf/spectrum.hpp"

namespace akf {

// Brute-force reference: every eigenvalue with k <= K materialized, sorted
// descending with the same tie order as EigenStream, truncation mass bounded
// analytically. Shares no enumeration or summation code with the spectrum
// module; hard size caps are features, not limitations.
struct MaterializedSpectrum {
  std::uint64_t d = 0;
  std::uint64_t K = 0;
  // Exactly 1 + 2*d*K entries (the constant eigenvalue is always listed).
  std::vector<std::pair<double, EigenLabel>> values;
  // Bracket on the total mass of the omitted k > K eigenvalues.
  BoundedValue remainder;
};

inline constexpr std::uint64_t kOracleMaxD = 8;
inline constexpr std::uint64_t kOracleMaxK = 100'000;

MaterializedSpectrum materialize(const ParameterFamily& family,
                                 std::uint64_t d, std::uint64_t K);

// Left-to-right compensated prefix sums over the sorted list; element i is
// the sum of the first i+1 values. Matches EigenStream::emitted_sum exactly
// (same order, same accumulation).
std::vector<double> oracle_prefix_sums(const MaterializedSpectrum& spec);

struct OracleComplexity {
  bool conclusive = false;  // false: remainder too large to pin n; raise K
  std::uint64_t n = 0;
  BoundedValue tail_at_n;
  BoundedValue threshold;
};

OracleComplexity oracle_info_complexity(const MaterializedSpectrum& spec,
                                        double eps, Criterion crit);

}  // namespace akf
