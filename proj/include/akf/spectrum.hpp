#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "akf/bounded.hpp"
#include "akf/params.hpp"
#include "akf/util.hpp"

namespace akf {

enum class Parity : std::uint8_t { Cos, Sin };

// Identifies one eigenvalue of the d-variate covariance operator: either the
// single constant-mode eigenvalue sum_j alpha_j, or one of the two equal
// oscillatory eigenvalues beta_j / k^{sigma_j} (cos/sin in real form).
struct EigenLabel {
  enum class Kind : std::uint8_t { Constant, Oscillatory };

  Kind kind = Kind::Constant;
  std::uint64_t j = 0;  // coordinate (oscillatory only)
  std::uint64_t k = 0;  // frequency >= 1 (oscillatory only)
  Parity parity = Parity::Cos;

  static EigenLabel constant() { return {}; }
  static EigenLabel oscillatory(std::uint64_t j, std::uint64_t k, Parity p) {
    return {Kind::Oscillatory, j, k, p};
  }

  bool operator==(const EigenLabel&) const = default;
};

// Tie order for equal eigenvalues: constant first, then smaller j, smaller k,
// cos before sin. Returns true when a precedes b.
bool label_tie_before(const EigenLabel& a, const EigenLabel& b);

struct Emission {
  double value = 0.0;
  EigenLabel label;
};

// Lazy non-increasing enumeration of the full eigenvalue multiset. Memory is
// proportional to the number of coordinate streams whose head has been
// reached, not to d: since beta_j is non-increasing, coordinate j+1 enters
// the frontier only once the emission level drops to beta_{j+1}.
//
// Single-owner mutable state; not shareable across threads.
class EigenStream {
 public:
  EigenStream(const ParameterFamily& family, std::uint64_t d);

  // Largest not-yet-emitted eigenvalue; never exhausts.
  Emission next();

  std::uint64_t emitted_count() const { return count_; }

  // Bracket on the sum of everything emitted so far.
  BoundedValue emitted_sum() const {
    return {sum_.value(), sum_.rounding_bound()};
  }

  double constant_value() const { return constant_value_; }

 private:
  struct Head {
    double value;
    std::uint64_t j;
    std::uint64_t k;
    double beta;
    double sigma;
  };
  struct HeadOrder {
    bool operator()(const Head& a, const Head& b) const {
      if (a.value != b.value) return a.value < b.value;  // max-heap on value
      if (a.j != b.j) return a.j > b.j;
      return a.k > b.k;
    }
  };

  void introduce_pending_coordinates();
  Emission emit(double value, EigenLabel label);

  const ParameterFamily* family_;
  std::uint64_t d_;
  std::priority_queue<Head, std::vector<Head>, HeadOrder> heap_;
  std::uint64_t next_coord_ = 1;
  double next_coord_beta_ = 0.0;
  double constant_value_ = 0.0;
  bool constant_emitted_ = false;
  std::optional<Head> pending_sin_;
  CompensatedSum sum_;
  std::uint64_t count_ = 0;
};

struct LevelCount {
  std::uint64_t count = 0;      // eigenvalues >= level (or > level if strict)
  BoundedValue tail_above;      // their total mass
};

// Precomputed per-(family, d) state for repeated level queries: the constant
// eigenvalue sum and a zeta cache survive across calls, so each query costs
// only the coordinates whose stream reaches the level.
class LevelQuery {
 public:
  LevelQuery(const ParameterFamily& family, std::uint64_t d,
             double zeta_tol = 1e-15);
  ~LevelQuery();
  LevelQuery(const LevelQuery&) = delete;
  LevelQuery& operator=(const LevelQuery&) = delete;

  LevelCount at(double level, bool strict = false) const;
  double next_below(double level) const;
  std::optional<double> next_above(double level) const;
  BoundedValue constant_eigenvalue() const { return constant_; }

 private:
  const ParameterFamily* family_;
  std::uint64_t d_;
  BoundedValue constant_;
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

// Counts eigenvalues at or above `level` without enumeration, by inverting
// beta_j / k^{sigma_j} >= level per coordinate. The floating floor of the
// inverse power is only a guess; every count is settled by re-evaluating the
// boundary eigenvalues with the same expression the enumeration emits, which
// covers the near-integer off-by-one hazard.
LevelCount count_at_level(const ParameterFamily& family, std::uint64_t d,
                          double level, bool strict = false);

// Sum of all eigenvalues: sum_j alpha_j + 2 sum_j beta_j zeta(sigma_j).
BoundedValue trace(const ParameterFamily& family, std::uint64_t d,
                   double zeta_tol = 1e-15);

// Sum of eigenvalues^tau for tau in (0,1) with tau*sigma_1 > 1. The constant
// eigenvalue enters as (sum_j alpha_j)^tau.
BoundedValue tau_trace(const ParameterFamily& family, std::uint64_t d,
                       double tau, double zeta_tol = 1e-15);

// Largest eigenvalue value strictly below `level` (the next tie class down).
double next_level_below(const ParameterFamily& family, std::uint64_t d,
                        double level);

// Smallest eigenvalue value strictly above `level`; nullopt if none.
std::optional<double> next_level_above(const ParameterFamily& family,
                                       std::uint64_t d, double level);

}  // namespace akf
