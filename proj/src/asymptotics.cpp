#include "akf/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "akf/errors.hpp"
#include "akf/util.hpp"

namespace akf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sigma_j -> infinity, certified from the rule shape (non-decreasing is
// already enforced by validation).
bool sigma_unbounded(const SequenceRule& sigma, std::string* why) {
  switch (sigma.kind()) {
    case RuleKind::Const:
      *why = "sigma is constant, it does not tend to infinity";
      return false;
    case RuleKind::Power:
      if (sigma.param_b() < 0.0) return true;  // c * j^{|s|}
      *why = "sigma is non-increasing, it does not tend to infinity";
      return false;
    case RuleKind::Affine:
      if (sigma.param_b() > 0.0) return true;
      *why = "sigma is constant, it does not tend to infinity";
      return false;
    case RuleKind::Geom:
      if (sigma.param_b() > 1.0) return true;
      *why = "sigma is bounded, it does not tend to infinity";
      return false;
    case RuleKind::Table:
      *why = "sigma is tabulated; a finite table cannot certify the limit";
      return false;
  }
  *why = "unsupported sigma rule";
  return false;
}

// limit of alpha_j / beta_j in [0, +inf], certified for closed forms.
std::optional<double> ratio_limit(const ParameterFamily& family,
                                  std::string* why) {
  auto a = growth_class(family.alpha);
  auto b = growth_class(family.beta);
  if (!a || !b) {
    *why = "alpha/beta limit not certifiable from the given rules";
    return std::nullopt;
  }
  if (a->coeff == 0.0) return 0.0;
  double g = a->geo_base / b->geo_base;
  double e = a->poly_exp - b->poly_exp;
  if (g > 1.0) return kInf;
  if (g < 1.0) return 0.0;
  if (e > 0.0) return kInf;
  if (e < 0.0) return 0.0;
  return a->coeff / b->coeff;
}

}  // namespace

Classification classify(const ParameterFamily& family) {
  Classification out;
  require_valid(family, 1);

  double c = 0.0, s = 0.0;
  switch (family.beta.kind()) {
    case RuleKind::Power:
      c = family.beta.param_a();
      s = family.beta.param_b();
      break;
    case RuleKind::Const:
      c = family.beta.param_a();
      s = 0.0;
      break;
    case RuleKind::Geom:
      if (family.beta.param_b() == 1.0) {
        c = family.beta.param_a();
        s = 0.0;
        break;
      }
      out.reason = "beta decays geometrically, not like c * j^{-s}";
      return out;
    case RuleKind::Affine:
      if (family.beta.param_b() == 0.0) {
        c = family.beta.param_a();
        s = 0.0;
        break;
      }
      out.reason = "beta is not asymptotically c * j^{-s}";
      return out;
    case RuleKind::Table:
      out.reason = "beta is tabulated; a finite table cannot certify c * j^{-s}";
      return out;
  }

  std::string why;
  if (!sigma_unbounded(family.sigma, &why)) {
    out.reason = why;
    return out;
  }

  std::optional<double> r = ratio_limit(family, &why);
  if (!r) {
    out.reason = why;
    return out;
  }

  KZRegime regime;
  regime.c = c;
  regime.s = s;
  regime.r = *r;
  regime.eps0 = std::isinf(*r) ? std::numeric_limits<double>::quiet_NaN()
                               : 1.0 / std::sqrt(1.0 + *r / 2.0);
  if (s > 1.0 || std::isinf(*r)) {
    regime.case_id = 1;
  } else if (s < 1.0) {
    regime.case_id = 2;
  } else {
    regime.case_id = 3;
  }
  out.regime = regime;
  return out;
}

Prediction predicted_n(const KZRegime& regime, std::uint64_t d, double eps) {
  if (!(eps > 0.0)) throw validation_error("predicted_n: eps must be positive");
  if (regime.case_id == 1) {
    if (!(eps < 1.0)) throw validation_error("predicted_n: eps must lie in (0,1)");
    return {Prediction::Kind::BoundedInD, 0.0};
  }
  if (!(eps < regime.eps0)) {
    throw validation_error("predicted_n: eps = " + format_double(eps) +
                           " is outside (0, eps0 = " +
                           format_double(regime.eps0) + ")");
  }
  double shrink = 1.0 - (eps / regime.eps0) * (eps / regime.eps0);
  if (regime.case_id == 2) {
    double q = std::pow(shrink, 1.0 / (1.0 - regime.s));
    return {Prediction::Kind::Count,
            2.0 * q * static_cast<double>(d)};
  }
  return {Prediction::Kind::LogCount,
          shrink * std::log(static_cast<double>(d))};
}

std::vector<CompareRow> compare(const ParameterFamily& family,
                                std::vector<std::uint64_t> d_grid, double eps,
                                const ComplexityOptions& options) {
  Classification cls = classify(family);
  if (!cls.regime) {
    throw validation_error("compare: family not in a recognized regime: " +
                           cls.reason);
  }
  const KZRegime& regime = *cls.regime;

  std::sort(d_grid.begin(), d_grid.end());
  d_grid.erase(std::unique(d_grid.begin(), d_grid.end()), d_grid.end());

  std::vector<CompareRow> rows;
  rows.reserve(d_grid.size());
  for (std::uint64_t d : d_grid) {
    CompareRow row;
    row.d = d;
    row.n_computed = info_complexity(family, d, eps, Criterion::NOR, options).n;
    rows.push_back(row);
  }

  for (CompareRow& row : rows) {
    switch (regime.case_id) {
      case 1:
        // the published result gives only boundedness; compare against the
        // value at the largest probed d as the empirical stable point
        row.n_predicted = static_cast<double>(rows.back().n_computed);
        row.ratio = static_cast<double>(row.n_computed) / row.n_predicted;
        break;
      case 2: {
        Prediction p = predicted_n(regime, row.d, eps);
        row.n_predicted = p.value;
        row.ratio = static_cast<double>(row.n_computed) / p.value;
        break;
      }
      case 3: {
        Prediction p = predicted_n(regime, row.d, eps);
        row.n_predicted = std::exp(p.value);
        row.ratio = std::log(static_cast<double>(row.n_computed)) / p.value;
        break;
      }
    }
  }
  return rows;
}

}  // namespace akf
