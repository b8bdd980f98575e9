#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace akf {

enum class RuleKind { Const, Power, Affine, Geom, Table };

// One parameter sequence j -> u_j (1-based). Closed forms evaluate lazily and
// never materialize arrays; tables are finite and querying past the end is an
// error, not an extrapolation.
class SequenceRule {
 public:
  static SequenceRule constant(double value);
  static SequenceRule power(double c, double s);        // c * j^{-s}
  static SequenceRule affine(double a, double b);       // a + b*j
  static SequenceRule geometric(double c, double rho);  // c * rho^j
  static SequenceRule table(std::vector<double> values);

  RuleKind kind() const { return kind_; }
  double at(std::uint64_t j) const;  // throws validation_error past a table
  bool closed_form() const { return kind_ != RuleKind::Table; }
  std::uint64_t max_index() const;

  // Raw parameters; meaning depends on kind (see the factory signatures).
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  const std::vector<double>& table_values() const { return table_; }

 private:
  SequenceRule(RuleKind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  explicit SequenceRule(std::vector<double> v);

  RuleKind kind_;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> table_;
};

// Asymptotic growth class coeff * j^poly_exp * geo_base^j of a closed-form
// rule; nullopt for tables (a finite table certifies no limit).
struct GrowthClass {
  double coeff;
  double poly_exp;
  double geo_base;
};
std::optional<GrowthClass> growth_class(const SequenceRule& rule);

struct ParameterFamily {
  SequenceRule alpha;
  SequenceRule beta;
  SequenceRule sigma;

  std::uint64_t d_max() const;
  double alpha_at(std::uint64_t j) const { return alpha.at(j); }
  double beta_at(std::uint64_t j) const { return beta.at(j); }
  double sigma_at(std::uint64_t j) const { return sigma.at(j); }

  // The companion family with alpha forced to zero (same beta, sigma).
  ParameterFamily zeroed_alpha() const;
};

enum class ValidationClause {
  AlphaNegative,
  BetaAboveOne,
  BetaNonPositive,
  BetaIncreasing,
  SigmaTooSmall,  // sigma_1 must exceed 1 + kZetaPoleGuard
  SigmaDecreasing,
  EvaluationFailure,  // rule queried beyond its table
};

const char* validation_clause_name(ValidationClause c);

struct ValidationIssue {
  std::uint64_t index = 0;
  ValidationClause clause = ValidationClause::EvaluationFailure;
  std::string message;
};

struct ValidateOptions {
  // Opt-in side-condition checks (hypotheses of the ratio-based SPT result;
  // they are assumptions, never consequences, so they are not part of the
  // default pass/fail).
  bool check_ratio_monotone = false;
  bool check_alpha_sum_linear = false;
  // Probe points for the alpha-sum check; defaults to powers of two up to d.
  std::vector<std::uint64_t> probe;
};

struct ValidationReport {
  bool pass = false;
  std::optional<ValidationIssue> issue;

  // Filled only when the corresponding opt-in check ran.
  std::optional<bool> ratio_nondecreasing;
  std::optional<std::uint64_t> ratio_violation_index;
  bool ratio_checked_analytically = false;
  std::optional<double> alpha_sum_linear_c;  // empirical max of sum/(d*alpha_d)
  std::optional<bool> alpha_sum_linear_holds;
  bool alpha_sum_checked_analytically = false;
};

ValidationReport validate(const ParameterFamily& family, std::uint64_t d,
                          const ValidateOptions& options = {});

// Throwing convenience used by the numeric modules on entry.
void require_valid(const ParameterFamily& family, std::uint64_t d);

// alpha_j / beta_j (beta_j > 0 is guaranteed by validation).
double alpha_beta_ratio(const ParameterFamily& family, std::uint64_t j);

}  // namespace akf
