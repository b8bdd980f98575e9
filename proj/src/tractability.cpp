#include "akf/tractability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "akf/errors.hpp"
#include "akf/special.hpp"
#include "akf/spectrum.hpp"

namespace akf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// alpha/beta as an exact closed form C * j^e * g^j; only const/power/geom
// pairs have this shape exactly.
struct RatioForm {
  double coeff;
  double poly_exp;
  double geo_base;
};

bool pure_form(const SequenceRule& r) {
  return r.kind() == RuleKind::Const || r.kind() == RuleKind::Power ||
         r.kind() == RuleKind::Geom;
}

std::optional<RatioForm> ratio_form(const ParameterFamily& family) {
  if (!pure_form(family.alpha) || !pure_form(family.beta)) return std::nullopt;
  auto a = growth_class(family.alpha);
  auto b = growth_class(family.beta);
  if (!a || !b) return std::nullopt;
  return RatioForm{a->coeff / b->coeff, a->poly_exp - b->poly_exp,
                   a->geo_base / b->geo_base};
}

double limit_exponent(const RatioForm& f) {
  // liminf (= limit here) of ln(C j^e g^j) / ln j
  if (f.geo_base > 1.0) return kInf;
  if (f.geo_base < 1.0) return -kInf;
  return f.poly_exp;
}

std::vector<std::uint64_t> default_probe_grid(const ParameterFamily& family) {
  std::uint64_t cap = std::min<std::uint64_t>(family.d_max(), 1'000'000);
  std::vector<std::uint64_t> grid;
  for (std::uint64_t d = 2; d <= cap; d *= 4) grid.push_back(d);
  if (grid.empty() || grid.back() != cap) grid.push_back(cap);
  return grid;
}

DecayIndex empirical_liminf(const std::vector<std::uint64_t>& d_grid,
                            const std::function<double(std::uint64_t)>& ratio) {
  double inf_val = kInf;
  bool any = false;
  for (std::uint64_t d : d_grid) {
    if (d < 2) continue;
    inf_val = std::min(inf_val, ratio(d));
    any = true;
  }
  if (!any) throw validation_error("empirical decay index needs grid points with d >= 2");
  return {inf_val, Provenance::Empirical};
}

}  // namespace

DecayIndex a_star_analytic(const ParameterFamily& family) {
  auto b = growth_class(family.beta);
  if (!b) {
    throw validation_error(
        "a_star: beta rule has no closed asymptotic form; use the empirical "
        "mode with a d grid");
  }
  if (b->geo_base < 1.0) return {kInf, Provenance::Analytic};
  if (b->geo_base > 1.0) return {-kInf, Provenance::Analytic};
  return {-b->poly_exp, Provenance::Analytic};
}

DecayIndex a_star_empirical(const ParameterFamily& family,
                            const std::vector<std::uint64_t>& d_grid) {
  return empirical_liminf(d_grid, [&](std::uint64_t d) {
    return std::log(1.0 / family.beta_at(d)) /
           std::log(static_cast<double>(d));
  });
}

DecayIndex b_star_analytic(const ParameterFamily& family) {
  auto form = ratio_form(family);
  if (!form) {
    throw validation_error(
        "b_star: alpha/beta has no closed asymptotic form; use the empirical "
        "mode with a d grid");
  }
  if (!(form->coeff > 0.0)) {
    throw validation_error("b_star is undefined: alpha vanishes");
  }
  return {limit_exponent(*form), Provenance::Analytic};
}

DecayIndex b_star_empirical(const ParameterFamily& family,
                            const std::vector<std::uint64_t>& d_grid) {
  return empirical_liminf(d_grid, [&](std::uint64_t d) {
    double a = family.alpha_at(d);
    if (!(a > 0.0)) {
      throw validation_error("b_star is undefined: alpha_d = 0 at d = " +
                             std::to_string(d));
    }
    return std::log(a / family.beta_at(d)) / std::log(static_cast<double>(d));
  });
}

namespace {

DecayIndex a_star_auto(const ParameterFamily& family,
                       const std::vector<std::uint64_t>& grid) {
  if (family.beta.closed_form() && growth_class(family.beta)) {
    return a_star_analytic(family);
  }
  return a_star_empirical(family, grid);
}

DecayIndex b_star_auto(const ParameterFamily& family,
                       const std::vector<std::uint64_t>& grid) {
  if (ratio_form(family)) return b_star_analytic(family);
  return b_star_empirical(family, grid);
}

// Does sup_j alpha_j / beta_j stay finite? Exact for pure closed forms.
HypothesisStatus check_alpha_dominated(const ParameterFamily& family,
                                       std::uint64_t probe_limit) {
  HypothesisStatus h;
  h.name = "alpha-dominated-by-beta";
  h.constant = kNaN;

  if (auto form = ratio_form(family)) {
    bool bounded = form->geo_base < 1.0 ||
                   (form->geo_base == 1.0 && form->poly_exp <= 0.0);
    if (form->coeff == 0.0) bounded = true;  // alpha identically zero
    if (bounded) {
      h.state = HypothesisStatus::State::HoldsAnalytic;
      // sup of C j^e g^j: scan until the geometric factor has clearly won
      double sup = 0.0;
      for (std::uint64_t j = 1; j <= 4096; ++j) {
        sup = std::max(sup, alpha_beta_ratio(family, j));
      }
      h.constant = sup;
      h.note = "sup alpha_j/beta_j is finite";
    } else {
      h.state = HypothesisStatus::State::Fails;
      h.note = "alpha_j/beta_j grows without bound";
    }
    return h;
  }

  if (family.alpha.kind() == RuleKind::Affine &&
      family.alpha.param_b() > 0.0) {
    h.state = HypothesisStatus::State::Fails;
    h.note = "linearly growing alpha outruns a non-increasing beta";
    return h;
  }

  double sup = 0.0;
  std::uint64_t limit = std::min<std::uint64_t>(family.d_max(), probe_limit);
  for (std::uint64_t j = 1; j <= limit; ++j) {
    sup = std::max(sup, alpha_beta_ratio(family, j));
  }
  h.state = HypothesisStatus::State::HoldsEmpirical;
  h.constant = sup;
  h.note = "checked through j <= " + std::to_string(limit);
  return h;
}

std::optional<double> exponent_from(double decay_excess, double sigma1) {
  // max{2/decay_excess, 2/(sigma1 - 1)}; decay_excess may be +inf
  return std::max(2.0 / decay_excess, 2.0 / (sigma1 - 1.0));
}

}  // namespace

TractabilityVerdict spt_verdict(const ParameterFamily& family, Criterion crit,
                                const VerdictOptions& options) {
  require_valid(family, 1);
  std::vector<std::uint64_t> grid =
      options.probe_grid.empty() ? default_probe_grid(family)
                                 : options.probe_grid;

  TractabilityVerdict v;
  v.criterion = crit;
  double sigma1 = family.sigma_at(1);

  DecayIndex a = a_star_auto(family, grid);
  v.a_star = a;

  if (crit == Criterion::ABS) {
    v.clause = "abs-decay-index";
    v.spt = a.value > 1.0 ? SptStatus::True : SptStatus::False;
    if (v.spt == SptStatus::True) {
      v.exponent = exponent_from(a.value - 1.0, sigma1);
    }
    return v;
  }

  // NOR: two sufficient hypothesis sets, tried in turn.
  HypothesisStatus dom = check_alpha_dominated(family, 1'000'000);
  v.hypotheses.push_back(dom);

  ValidateOptions vo;
  vo.check_ratio_monotone = true;
  vo.check_alpha_sum_linear = true;
  std::uint64_t probe_d = std::min<std::uint64_t>(family.d_max(), 1'000'000);
  ValidationReport side = validate(family, probe_d, vo);

  HypothesisStatus mono;
  mono.name = "ratio-monotone";
  mono.constant = kNaN;
  if (side.ratio_nondecreasing.value_or(false)) {
    mono.state = side.ratio_checked_analytically
                     ? HypothesisStatus::State::HoldsAnalytic
                     : HypothesisStatus::State::HoldsEmpirical;
    mono.note = side.ratio_checked_analytically
                    ? "alpha nondecreasing against a non-increasing beta"
                    : "scanned through j <= " + std::to_string(probe_d);
  } else {
    mono.state = HypothesisStatus::State::Fails;
    mono.note = side.ratio_violation_index
                    ? "violated at j = " + std::to_string(*side.ratio_violation_index)
                    : "ratio not nondecreasing";
  }
  v.hypotheses.push_back(mono);

  HypothesisStatus sums;
  sums.name = "alpha-sum-linear";
  sums.constant = side.alpha_sum_linear_c.value_or(kNaN);
  if (side.alpha_sum_linear_holds.value_or(false)) {
    sums.state = side.alpha_sum_checked_analytically
                     ? HypothesisStatus::State::HoldsAnalytic
                     : HypothesisStatus::State::HoldsEmpirical;
    sums.note = "cumulative alpha stays within c * d * alpha_d";
  } else {
    sums.state = HypothesisStatus::State::Fails;
    sums.note = "cumulative alpha outgrows d * alpha_d";
  }
  v.hypotheses.push_back(sums);

  bool dom_holds = dom.state == HypothesisStatus::State::HoldsAnalytic ||
                   dom.state == HypothesisStatus::State::HoldsEmpirical;
  bool ratio_holds =
      (mono.state == HypothesisStatus::State::HoldsAnalytic ||
       mono.state == HypothesisStatus::State::HoldsEmpirical) &&
      (sums.state == HypothesisStatus::State::HoldsAnalytic ||
       sums.state == HypothesisStatus::State::HoldsEmpirical);

  std::optional<SptStatus> via_dom, via_ratio;
  std::optional<double> exp_dom, exp_ratio;
  if (dom_holds) {
    via_dom = a.value > 1.0 ? SptStatus::True : SptStatus::False;
    if (*via_dom == SptStatus::True) {
      exp_dom = exponent_from(a.value - 1.0, sigma1);
    }
  }
  if (ratio_holds) {
    DecayIndex b = b_star_auto(family, grid);
    v.b_star = b;
    via_ratio = b.value > 0.0 ? SptStatus::True : SptStatus::False;
    if (*via_ratio == SptStatus::True) {
      exp_ratio = exponent_from(b.value, sigma1);
    }
  }

  if (via_dom && via_ratio) {
    if (*via_dom != *via_ratio) {
      // Mathematically impossible when both hypothesis sets genuinely hold;
      // reachable only through empirical noise, so refuse to guess.
      v.spt = SptStatus::Unknown;
      v.clause = "nor-conflicting-clauses";
      return v;
    }
    v.spt = *via_dom;
    v.clause = "nor-alpha-dominated+nor-ratio-monotone";
    v.exponent = exp_dom;
  } else if (via_dom) {
    v.spt = *via_dom;
    v.clause = "nor-alpha-dominated";
    v.exponent = exp_dom;
  } else if (via_ratio) {
    v.spt = *via_ratio;
    v.clause = "nor-ratio-monotone";
    v.exponent = exp_ratio;
  } else {
    v.spt = SptStatus::Unknown;
    v.clause = "nor-no-verifiable-hypothesis";
    if (a.value > 1.0) {
      HypothesisStatus note;
      note.name = "abs-implies-nor";
      note.state = HypothesisStatus::State::Undecidable;
      note.constant = kNaN;
      note.note =
          "a_star > 1 gives SPT for ABS, which transfers to NOR by "
          "rescaling; the exponent is not pinned by the verified clauses";
      v.hypotheses.push_back(note);
    }
  }
  return v;
}

std::vector<TauScanRow> tau_criterion_scan(
    const ParameterFamily& family, Criterion crit,
    const std::vector<double>& tau_grid,
    const std::vector<std::uint64_t>& d_grid, double zeta_tol) {
  if (tau_grid.empty() || d_grid.empty()) {
    throw validation_error("tau scan needs non-empty tau and d grids");
  }
  std::vector<std::uint64_t> grid = d_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  require_valid(family, grid.back());

  double sigma1 = family.sigma_at(1);
  for (double tau : tau_grid) {
    if (!(tau > 0.0 && tau < 1.0) || !(tau * sigma1 > 1.0 + kZetaPoleGuard)) {
      throw numeric_error("tau scan precondition: tau in (0,1) with tau * "
                          "sigma_1 > 1 (tau = " + format_double(tau) + ")");
    }
  }

  struct Track {
    std::string witness;
    std::vector<double> values;  // aligned with grid
  };

  std::vector<TauScanRow> rows;
  for (double tau : tau_grid) {
    // one incremental pass over j per tau
    CompensatedSum alpha_sum, tau_sum, trace_sum;
    double last_zt_p = kNaN, last_zt_v = 0.0;
    double last_z_p = kNaN, last_z_v = 0.0;
    std::uint64_t j = 1;

    std::vector<Track> tracks;
    if (crit == Criterion::ABS) {
      tracks.push_back({"abs-pt", {}});
      tracks.push_back({"abs-spt", {}});
    } else {
      tracks.push_back({"nor", {}});
    }

    for (std::uint64_t d : grid) {
      for (; j <= d; ++j) {
        double alpha = family.alpha_at(j);
        double beta = family.beta_at(j);
        double sigma = family.sigma_at(j);
        alpha_sum.add(alpha);
        double pt = tau * sigma;
        if (pt != last_zt_p) {
          last_zt_v = zeta(pt, zeta_tol).value;
          last_zt_p = pt;
        }
        tau_sum.add(2.0 * std::pow(beta, tau) * last_zt_v);
        if (crit == Criterion::NOR) {
          if (sigma != last_z_p) {
            last_z_v = zeta(sigma, zeta_tol).value;
            last_z_p = sigma;
          }
          trace_sum.add(alpha + 2.0 * beta * last_z_v);
        }
      }
      double tau_trace_d =
          std::pow(alpha_sum.value(), tau) + tau_sum.value();
      double root = std::pow(tau_trace_d, 1.0 / tau);
      if (crit == Criterion::ABS) {
        tracks[0].values.push_back(
            root * std::pow(static_cast<double>(d), -1.0 / tau));
        tracks[1].values.push_back(root);
      } else {
        tracks[0].values.push_back(root / trace_sum.value());
      }
    }

    for (const Track& t : tracks) {
      TauScanRow row;
      row.tau = tau;
      row.witness = t.witness;
      std::size_t arg = 0;
      for (std::size_t i = 1; i < t.values.size(); ++i) {
        if (t.values[i] > t.values[arg]) arg = i;
      }
      row.sup_value = t.values[arg];
      row.sup_at_d = grid[arg];

      // growth over the grid's last decade (or last step when the grid is
      // tighter than a decade)
      double growth = 0.0;
      if (grid.size() >= 2) {
        std::size_t prev = grid.size() - 2;
        while (prev > 0 && grid[prev] > grid.back() / 10) --prev;
        growth = (t.values.back() - t.values[prev]) /
                 std::max(std::abs(t.values[prev]), 1e-300);
      }
      row.last_decade_growth = growth;
      bool sup_at_edge = (arg + 1 == grid.size());
      row.bounded = !sup_at_edge || growth < 1e-6;
      if (grid.size() < 2) row.bounded = false;  // cannot certify from one point
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace akf
