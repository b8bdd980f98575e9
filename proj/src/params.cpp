#include "akf/params.hpp"

#include <algorithm>
#include <cmath>

#include "akf/errors.hpp"
#include "akf/special.hpp"

namespace akf {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw validation_error(std::string("non-finite rule parameter: ") + what);
  }
}

}  // namespace

SequenceRule SequenceRule::constant(double value) {
  require_finite(value, "const.value");
  return SequenceRule(RuleKind::Const, value, 0.0);
}

SequenceRule SequenceRule::power(double c, double s) {
  require_finite(c, "power.c");
  require_finite(s, "power.s");
  return SequenceRule(RuleKind::Power, c, s);
}

SequenceRule SequenceRule::affine(double a, double b) {
  require_finite(a, "affine.a");
  require_finite(b, "affine.b");
  return SequenceRule(RuleKind::Affine, a, b);
}

SequenceRule SequenceRule::geometric(double c, double rho) {
  require_finite(c, "geom.c");
  require_finite(rho, "geom.rho");
  return SequenceRule(RuleKind::Geom, c, rho);
}

SequenceRule SequenceRule::table(std::vector<double> values) {
  if (values.empty()) throw validation_error("table rule needs at least one value");
  for (double v : values) require_finite(v, "table entry");
  return SequenceRule(std::move(values));
}

SequenceRule::SequenceRule(std::vector<double> v)
    : kind_(RuleKind::Table), table_(std::move(v)) {}

double SequenceRule::at(std::uint64_t j) const {
  if (j == 0) throw validation_error("sequence index is 1-based");
  switch (kind_) {
    case RuleKind::Const:
      return a_;
    case RuleKind::Power:
      return a_ * std::pow(static_cast<double>(j), -b_);
    case RuleKind::Affine:
      return a_ + b_ * static_cast<double>(j);
    case RuleKind::Geom:
      return a_ * std::pow(b_, static_cast<double>(j));
    case RuleKind::Table:
      if (j > table_.size()) {
        throw validation_error("table rule queried beyond its " +
                               std::to_string(table_.size()) + " entries");
      }
      return table_[j - 1];
  }
  throw validation_error("corrupt rule kind");
}

std::uint64_t SequenceRule::max_index() const {
  if (kind_ == RuleKind::Table) return table_.size();
  return std::numeric_limits<std::uint64_t>::max();
}

std::optional<GrowthClass> growth_class(const SequenceRule& rule) {
  switch (rule.kind()) {
    case RuleKind::Const:
      return GrowthClass{rule.param_a(), 0.0, 1.0};
    case RuleKind::Power:
      return GrowthClass{rule.param_a(), -rule.param_b(), 1.0};
    case RuleKind::Affine:
      if (rule.param_b() > 0.0) return GrowthClass{rule.param_b(), 1.0, 1.0};
      if (rule.param_b() == 0.0) return GrowthClass{rule.param_a(), 0.0, 1.0};
      return std::nullopt;  // decreasing affine has no positive limit form
    case RuleKind::Geom:
      return GrowthClass{rule.param_a(), 0.0, rule.param_b()};
    case RuleKind::Table:
      return std::nullopt;
  }
  return std::nullopt;
}

std::uint64_t ParameterFamily::d_max() const {
  return std::min({alpha.max_index(), beta.max_index(), sigma.max_index()});
}

ParameterFamily ParameterFamily::zeroed_alpha() const {
  return ParameterFamily{SequenceRule::constant(0.0), beta, sigma};
}

const char* validation_clause_name(ValidationClause c) {
  switch (c) {
    case ValidationClause::AlphaNegative: return "alpha-negative";
    case ValidationClause::BetaAboveOne: return "beta-above-one";
    case ValidationClause::BetaNonPositive: return "beta-non-positive";
    case ValidationClause::BetaIncreasing: return "beta-increasing";
    case ValidationClause::SigmaTooSmall: return "sigma-too-small";
    case ValidationClause::SigmaDecreasing: return "sigma-decreasing";
    case ValidationClause::EvaluationFailure: return "evaluation-failure";
  }
  return "unknown";
}

namespace {

ValidationIssue issue(std::uint64_t index, ValidationClause clause,
                      std::string msg) {
  return ValidationIssue{index, clause, std::move(msg)};
}

// First index in (1, d] where the monotone predicate flips to true;
// requires bad(d) == true and bad(1) == false.
template <class Bad>
std::uint64_t first_bad_index(std::uint64_t d, Bad bad) {
  std::uint64_t lo = 1, hi = d;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (bad(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

std::optional<ValidationIssue> check_alpha(const SequenceRule& r,
                                           std::uint64_t d) {
  switch (r.kind()) {
    case RuleKind::Const:
    case RuleKind::Power:
      if (r.param_a() < 0.0)
        return issue(1, ValidationClause::AlphaNegative, "alpha_1 < 0");
      return std::nullopt;
    case RuleKind::Affine: {
      if (r.at(1) < 0.0)
        return issue(1, ValidationClause::AlphaNegative, "alpha_1 < 0");
      if (r.param_b() < 0.0 && r.at(d) < 0.0) {
        std::uint64_t j =
            first_bad_index(d, [&](std::uint64_t m) { return r.at(m) < 0.0; });
        return issue(j, ValidationClause::AlphaNegative,
                     "affine alpha turns negative");
      }
      return std::nullopt;
    }
    case RuleKind::Geom:
      if (r.param_a() < 0.0 || (r.param_a() > 0.0 && r.param_b() <= 0.0))
        return issue(1, ValidationClause::AlphaNegative,
                     "geometric alpha not nonnegative");
      return std::nullopt;
    case RuleKind::Table:
      for (std::uint64_t j = 1; j <= std::min(d, r.max_index()); ++j) {
        if (r.at(j) < 0.0)
          return issue(j, ValidationClause::AlphaNegative, "alpha_j < 0");
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<ValidationIssue> check_beta(const SequenceRule& r,
                                          std::uint64_t d) {
  auto head_checks = [&](double b1) -> std::optional<ValidationIssue> {
    if (!(b1 > 0.0))
      return issue(1, ValidationClause::BetaNonPositive, "beta_1 <= 0");
    if (b1 > 1.0)
      return issue(1, ValidationClause::BetaAboveOne, "beta_1 > 1");
    return std::nullopt;
  };
  switch (r.kind()) {
    case RuleKind::Const:
      return head_checks(r.param_a());
    case RuleKind::Power:
      if (auto i = head_checks(r.param_a())) return i;
      if (r.param_b() < 0.0 && d >= 2)
        return issue(2, ValidationClause::BetaIncreasing,
                     "power beta with negative decay increases");
      return std::nullopt;
    case RuleKind::Affine:
      if (auto i = head_checks(r.at(1))) return i;
      if (r.param_b() > 0.0 && d >= 2)
        return issue(2, ValidationClause::BetaIncreasing, "affine beta increases");
      if (r.param_b() < 0.0 && r.at(d) <= 0.0) {
        std::uint64_t j =
            first_bad_index(d, [&](std::uint64_t m) { return r.at(m) <= 0.0; });
        return issue(j, ValidationClause::BetaNonPositive,
                     "affine beta reaches zero");
      }
      return std::nullopt;
    case RuleKind::Geom:
      if (auto i = head_checks(r.at(1))) return i;
      if (r.param_b() > 1.0 && d >= 2)
        return issue(2, ValidationClause::BetaIncreasing, "geometric beta increases");
      return std::nullopt;
    case RuleKind::Table: {
      double prev = 0.0;
      for (std::uint64_t j = 1; j <= std::min(d, r.max_index()); ++j) {
        double v = r.at(j);
        if (!(v > 0.0))
          return issue(j, ValidationClause::BetaNonPositive, "beta_j <= 0");
        if (j == 1 && v > 1.0)
          return issue(1, ValidationClause::BetaAboveOne, "beta_1 > 1");
        if (j > 1 && v > prev)
          return issue(j, ValidationClause::BetaIncreasing,
                       "beta_j > beta_{j-1}");
        prev = v;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<ValidationIssue> check_sigma(const SequenceRule& r,
                                           std::uint64_t d) {
  const double floor = 1.0 + kZetaPoleGuard;
  auto head = [&](double s1) -> std::optional<ValidationIssue> {
    if (!(s1 > floor))
      return issue(1, ValidationClause::SigmaTooSmall,
                   "sigma_1 must exceed 1 + 1e-9");
    return std::nullopt;
  };
  switch (r.kind()) {
    case RuleKind::Const:
      return head(r.param_a());
    case RuleKind::Power:
      if (auto i = head(r.at(1))) return i;
      if (r.param_b() > 0.0 && d >= 2)
        return issue(2, ValidationClause::SigmaDecreasing,
                     "power sigma with positive decay decreases");
      return std::nullopt;
    case RuleKind::Affine:
      if (auto i = head(r.at(1))) return i;
      if (r.param_b() < 0.0 && d >= 2)
        return issue(2, ValidationClause::SigmaDecreasing, "affine sigma decreases");
      return std::nullopt;
    case RuleKind::Geom:
      if (auto i = head(r.at(1))) return i;
      if (r.param_b() < 1.0 && d >= 2)
        return issue(2, ValidationClause::SigmaDecreasing,
                     "geometric sigma decreases");
      return std::nullopt;
    case RuleKind::Table: {
      double prev = 0.0;
      for (std::uint64_t j = 1; j <= std::min(d, r.max_index()); ++j) {
        double v = r.at(j);
        if (j == 1) {
          if (auto i = head(v)) return i;
        } else if (v < prev) {
          return issue(j, ValidationClause::SigmaDecreasing,
                       "sigma_j < sigma_{j-1}");
        }
        prev = v;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// Nondecreasing alpha rule => the ratio alpha/beta is nondecreasing for free
// (beta never increases).
bool alpha_rule_nondecreasing(const SequenceRule& r) {
  switch (r.kind()) {
    case RuleKind::Const: return true;
    case RuleKind::Power: return r.param_b() <= 0.0;
    case RuleKind::Affine: return r.param_b() >= 0.0;
    case RuleKind::Geom: return r.param_b() >= 1.0;
    case RuleKind::Table: return false;
  }
  return false;
}

}  // namespace

ValidationReport validate(const ParameterFamily& family, std::uint64_t d,
                          const ValidateOptions& options) {
  ValidationReport report;
  if (d == 0) {
    report.issue = issue(0, ValidationClause::EvaluationFailure,
                         "dimension must be positive");
    return report;
  }
  if (d > family.d_max()) {
    report.issue =
        issue(family.d_max() + 1, ValidationClause::EvaluationFailure,
              "dimension exceeds the family's table length");
    return report;
  }

  if (auto i = check_beta(family.beta, d)) {
    report.issue = std::move(i);
    return report;
  }
  if (auto i = check_sigma(family.sigma, d)) {
    report.issue = std::move(i);
    return report;
  }
  if (auto i = check_alpha(family.alpha, d)) {
    report.issue = std::move(i);
    return report;
  }
  report.pass = true;

  if (options.check_ratio_monotone) {
    if (alpha_rule_nondecreasing(family.alpha) && family.alpha.closed_form() &&
        family.beta.closed_form()) {
      report.ratio_nondecreasing = family.alpha_at(1) > 0.0;
      report.ratio_checked_analytically = true;
      if (!*report.ratio_nondecreasing) report.ratio_violation_index = 1;
    } else {
      // direct scan; the hypothesis also demands r_1 > 0
      constexpr std::uint64_t kScanCap = 2'000'000;
      std::uint64_t limit = std::min(d, kScanCap);
      bool ok = family.alpha_at(1) > 0.0;
      std::uint64_t bad = ok ? 0 : 1;
      double prev = alpha_beta_ratio(family, 1);
      for (std::uint64_t j = 2; ok && j <= limit; ++j) {
        double cur = alpha_beta_ratio(family, j);
        if (cur < prev) {
          ok = false;
          bad = j;
        }
        prev = cur;
      }
      report.ratio_nondecreasing = ok;
      if (!ok) report.ratio_violation_index = bad;
    }
  }

  if (options.check_alpha_sum_linear) {
    std::vector<std::uint64_t> probe = options.probe;
    if (probe.empty()) {
      for (std::uint64_t p = 1; p <= d; p *= 2) {
        probe.push_back(p);
        if (p > d / 2) break;
      }
      probe.push_back(d);
    }
    std::sort(probe.begin(), probe.end());
    probe.erase(std::unique(probe.begin(), probe.end()), probe.end());

    switch (family.alpha.kind()) {
      case RuleKind::Const:
        report.alpha_sum_linear_c = family.alpha.param_a() > 0.0 ? 1.0 : 0.0;
        report.alpha_sum_linear_holds = true;
        report.alpha_sum_checked_analytically = true;
        break;
      case RuleKind::Power: {
        double s = family.alpha.param_b();
        report.alpha_sum_checked_analytically = true;
        if (s <= 0.0) {
          report.alpha_sum_linear_c = 1.0;  // each term <= alpha_d
          report.alpha_sum_linear_holds = true;
        } else if (s < 1.0) {
          report.alpha_sum_linear_c = 1.0 / (1.0 - s);
          report.alpha_sum_linear_holds = true;
        } else {
          report.alpha_sum_linear_holds = false;  // sums outgrow d*alpha_d
        }
        break;
      }
      case RuleKind::Affine:
        report.alpha_sum_checked_analytically = true;
        report.alpha_sum_linear_holds = family.alpha.param_b() >= 0.0;
        if (*report.alpha_sum_linear_holds) report.alpha_sum_linear_c = 1.0;
        break;
      case RuleKind::Geom: {
        double rho = family.alpha.param_b();
        report.alpha_sum_checked_analytically = true;
        if (rho >= 1.0) {
          report.alpha_sum_linear_c = rho > 1.0 ? rho / (rho - 1.0) : 1.0;
          report.alpha_sum_linear_holds = true;
        } else {
          report.alpha_sum_linear_holds = false;
        }
        break;
      }
      case RuleKind::Table: {
        double cmax = 0.0;
        bool defined = true;
        double running = 0.0;
        std::uint64_t next_probe = 0;
        std::uint64_t limit = probe.back();
        for (std::uint64_t j = 1; j <= limit; ++j) {
          running += family.alpha_at(j);
          if (next_probe < probe.size() && probe[next_probe] == j) {
            double ad = family.alpha_at(j);
            if (ad <= 0.0) {
              defined = false;
              break;
            }
            cmax = std::max(cmax, running / (static_cast<double>(j) * ad));
            ++next_probe;
          }
        }
        if (defined) {
          report.alpha_sum_linear_c = cmax;
          report.alpha_sum_linear_holds = true;  // over the probed range only
        } else {
          report.alpha_sum_linear_holds = false;
        }
        break;
      }
    }
  }

  return report;
}

void require_valid(const ParameterFamily& family, std::uint64_t d) {
  ValidationReport r = validate(family, d);
  if (!r.pass) {
    throw validation_error("invalid family at j=" +
                           std::to_string(r.issue->index) + " (" +
                           validation_clause_name(r.issue->clause) +
                           "): " + r.issue->message);
  }
}

double alpha_beta_ratio(const ParameterFamily& family, std::uint64_t j) {
  return family.alpha_at(j) / family.beta_at(j);
}

}  // namespace akf
