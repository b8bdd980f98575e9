#pragma once

#include <cstdint>
#include <vector>

#include "akf/params.hpp"
#include "akf/spectrum.hpp"

namespace akf {

// One realization of the additive field in coefficient space: independent
// N(0, lambda) draws per retained eigenlabel. Gaussian marginals are a
// sampling convenience -- mean squared projection error depends only on the
// covariance, so any second-order-matching distribution would verify the
// same identity. No grid discretization is ever performed.
struct FieldSample {
  std::uint64_t d = 0;
  std::uint64_t K = 0;
  // Layout: [0] constant mode, then (j,k) pairs j-major k-minor as cos,sin.
  std::vector<double> coefficients;

  std::uint64_t index_of(const EigenLabel& label) const;
  double coefficient(const EigenLabel& label) const {
    return coefficients[index_of(label)];
  }
};

// Deterministic: the same seed yields the identical sample.
FieldSample sample_field(const ParameterFamily& family, std::uint64_t d,
                         std::uint64_t K, std::uint64_t seed);

struct ProjectionError {
  double mean_sq_error = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

// Mean squared norm of the residual after projecting onto the top-n
// eigenlabels (spectrum tie order). Samples are indexed streams seeded from
// `seed`, accumulated chunk-by-chunk in index order, so the result does not
// depend on the worker count.
ProjectionError empirical_projection_error(const ParameterFamily& family,
                                           std::uint64_t d, std::uint64_t K,
                                           std::uint64_t n,
                                           std::uint64_t num_samples,
                                           std::uint64_t seed,
                                           unsigned threads = 1);

}  // namespace akf
