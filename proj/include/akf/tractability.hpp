#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "akf/complexity.hpp"
#include "akf/params.hpp"

namespace akf {

enum class Provenance { Analytic, Empirical };

// A decay index: a_star = liminf ln(1/beta_d)/ln d, b_star = liminf
// ln(alpha_d/beta_d)/ln d. Analytic values are exact for closed-form rules;
// empirical ones are running infima over a finite grid and only heuristic.
struct DecayIndex {
  double value = 0.0;  // may be +/- infinity
  Provenance provenance = Provenance::Analytic;
};

DecayIndex a_star_analytic(const ParameterFamily& family);
DecayIndex a_star_empirical(const ParameterFamily& family,
                            const std::vector<std::uint64_t>& d_grid);
DecayIndex b_star_analytic(const ParameterFamily& family);
DecayIndex b_star_empirical(const ParameterFamily& family,
                            const std::vector<std::uint64_t>& d_grid);

enum class SptStatus { True, False, Unknown };

struct HypothesisStatus {
  std::string name;
  enum class State { HoldsAnalytic, HoldsEmpirical, Fails, Undecidable } state;
  double constant;  // witnessing constant where meaningful, else NaN
  std::string note;
};

struct TractabilityVerdict {
  Criterion criterion = Criterion::ABS;
  bool pt = true;  // always true for these families
  bool qpt = true, uwt = true, wt = true;  // implied by pt
  SptStatus spt = SptStatus::Unknown;
  std::optional<DecayIndex> a_star;
  std::optional<DecayIndex> b_star;
  std::optional<double> exponent;  // defined only when spt == True
  std::string clause;              // which sufficient condition fired
  std::vector<HypothesisStatus> hypotheses;
};

struct VerdictOptions {
  // Grid for empirical liminf estimates and hypothesis probes on tabulated
  // families; defaults to decades up to min(1e6, d_max).
  std::vector<std::uint64_t> probe_grid;
};

// SPT/PT verdict. ABS: SPT iff a_star > 1 with exponent
// max{2/(a_star-1), 2/(sigma_1-1)}. NOR: decided through whichever of the
// two sufficient hypothesis sets (alpha dominated by beta; monotone ratio
// with linearly bounded alpha sums) can be verified, else Unknown.
TractabilityVerdict spt_verdict(const ParameterFamily& family, Criterion crit,
                                const VerdictOptions& options = {});

struct TauScanRow {
  double tau = 0.0;
  std::string witness;  // "abs-pt" | "abs-spt" | "nor"
  double sup_value = 0.0;
  std::uint64_t sup_at_d = 0;
  bool bounded = false;  // plateau heuristic; always heuristic
  double last_decade_growth = 0.0;
};

// tau-sum boundedness scan over a d grid. ABS rows report
// sup (tau_trace)^{1/tau} * d^{-1/tau} ("abs-pt") and sup (tau_trace)^{1/tau}
// ("abs-spt"); NOR rows report sup (tau_trace)^{1/tau} / trace. The bounded
// flag fires when the sup sits away from the right edge of the grid or the
// relative growth over the grid's last decade is below 1e-6.
std::vector<TauScanRow> tau_criterion_scan(
    const ParameterFamily& family, Criterion crit,
    const std::vector<double>& tau_grid,
    const std::vector<std::uint64_t>& d_grid, double zeta_tol = 1e-12);

}  // namespace akf
