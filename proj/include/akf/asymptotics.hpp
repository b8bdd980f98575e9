#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "akf/complexity.hpp"
#include "akf/params.hpp"

namespace akf {

// Growth regime of n^{NOR}(eps) as d -> infinity for families with
// beta_j ~ c j^{-s}, alpha_j/beta_j -> r and sigma_j -> infinity
// (the Khartov-Zani regimes).
//   case 1: s > 1 (any r), or s <= 1 with r = inf  -> n bounded in d
//   case 2: s < 1, r < inf                         -> n ~ 2 Q(eps) d
//   case 3: s = 1, r < inf                         -> ln n ~ (1-(eps/eps0)^2) ln d
// with Q(eps) = (1 - (eps/eps0)^2)^{1/(1-s)} and eps0 = (1 + r/2)^{-1/2}.
struct KZRegime {
  double c = 0.0;
  double s = 0.0;
  double r = 0.0;  // may be +infinity
  double eps0 = 1.0;
  int case_id = 0;
};

struct Classification {
  std::optional<KZRegime> regime;
  std::string reason;  // the failed condition when not applicable
};

// Analytic detection for closed forms; tabulated beta/sigma/alpha can never
// certify the limits and classify as not applicable.
Classification classify(const ParameterFamily& family);

struct Prediction {
  enum class Kind { BoundedInD, Count, LogCount } kind = Kind::Count;
  double value = 0.0;  // count (case 2) or predicted ln n (case 3)
};

// eps must lie in (0, eps0) for cases 2 and 3.
Prediction predicted_n(const KZRegime& regime, std::uint64_t d, double eps);

struct CompareRow {
  std::uint64_t d = 0;
  std::uint64_t n_computed = 0;
  double n_predicted = 0.0;
  double ratio = 0.0;
};

// Convergence table of computed vs predicted n^{NOR}(eps) over a d grid.
// case 2: ratio = n/(2 Q(eps) d); case 3: ratio = ln n / predicted ln n with
// n_predicted = d^{1-(eps/eps0)^2}; case 1: n_predicted is the n at the
// largest probed d (the empirical stable value) and ratio is n against it.
std::vector<CompareRow> compare(const ParameterFamily& family,
                                std::vector<std::uint64_t> d_grid, double eps,
                                const ComplexityOptions& options = {});

}  // namespace akf
