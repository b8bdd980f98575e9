#include "akf/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "akf/errors.hpp"
#include "akf/special.hpp"

// Deliberately self-contained: own enumeration, own sort, own compensated
// accumulation. The value of this module is that it shares no logic with the
// lazy stream it cross-checks. The accumulation is Neumaier summation in
// left-to-right order over the sorted list, the order the enumeration
// contract pins down, so prefix sums are comparable bit-for-bit.

namespace akf {

namespace {

struct NeumaierAcc {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

bool sorted_before(const std::pair<double, EigenLabel>& a,
                   const std::pair<double, EigenLabel>& b) {
  if (a.first != b.first) return a.first > b.first;
  return label_tie_before(a.second, b.second);
}

}  // namespace

MaterializedSpectrum materialize(const ParameterFamily& family,
                                 std::uint64_t d, std::uint64_t K) {
  if (d == 0 || d > kOracleMaxD || K == 0 || K > kOracleMaxK) {
    throw validation_error("oracle size caps: 1 <= d <= 8, 1 <= K <= 1e5");
  }
  require_valid(family, d);

  MaterializedSpectrum spec;
  spec.d = d;
  spec.K = K;
  spec.values.reserve(1 + 2 * d * K);

  NeumaierAcc constant;
  for (std::uint64_t j = 1; j <= d; ++j) constant.add(family.alpha_at(j));
  spec.values.emplace_back(constant.value(), EigenLabel::constant());

  double remainder_value = 0.0;
  double remainder_err = 0.0;
  for (std::uint64_t j = 1; j <= d; ++j) {
    double beta = family.beta_at(j);
    double sigma = family.sigma_at(j);
    for (std::uint64_t k = 1; k <= K; ++k) {
      double v = beta / std::pow(static_cast<double>(k), sigma);
      spec.values.emplace_back(v, EigenLabel::oscillatory(j, k, Parity::Cos));
      spec.values.emplace_back(v, EigenLabel::oscillatory(j, k, Parity::Sin));
    }
    BoundedValue t = tail_power_sum(K, sigma, 1e-15);
    remainder_value += 2.0 * beta * t.value;
    remainder_err += 2.0 * beta * t.abs_error + fp_slack(2.0 * beta * t.value);
  }
  spec.remainder = {remainder_value, remainder_err};

  std::sort(spec.values.begin(), spec.values.end(), sorted_before);
  return spec;
}

std::vector<double> oracle_prefix_sums(const MaterializedSpectrum& spec) {
  std::vector<double> out;
  out.reserve(spec.values.size());
  NeumaierAcc acc;
  for (const auto& [v, label] : spec.values) {
    acc.add(v);
    out.push_back(acc.value());
  }
  return out;
}

OracleComplexity oracle_info_complexity(const MaterializedSpectrum& spec,
                                        double eps, Criterion crit) {
  if (!(eps > 0.0)) throw validation_error("oracle: eps must be positive");
  if (crit == Criterion::NOR && !(eps < 1.0)) {
    throw validation_error("oracle: NOR needs eps in (0,1)");
  }

  const std::size_t m = spec.values.size();

  // Listed tail after the first n entries, via suffix accumulation (one more
  // route independent of trace-minus-prefix).
  std::vector<double> listed_tail(m + 1);
  std::vector<double> tail_slack(m + 1);
  {
    NeumaierAcc acc;
    double abs_acc = 0.0;
    listed_tail[m] = 0.0;
    tail_slack[m] = 0.0;
    for (std::size_t i = m; i-- > 0;) {
      acc.add(spec.values[i].first);
      abs_acc += std::abs(spec.values[i].first);
      listed_tail[i] = acc.value();
      tail_slack[i] = 4.0 * std::numeric_limits<double>::epsilon() * abs_acc;
    }
  }
  auto tail_at = [&](std::size_t n) -> BoundedValue {
    return {listed_tail[n] + spec.remainder.value,
            tail_slack[n] + spec.remainder.abs_error};
  };

  BoundedValue threshold;
  if (crit == Criterion::ABS) {
    threshold = {eps * eps, fp_slack(eps * eps)};
  } else {
    BoundedValue total = tail_at(0);  // full trace bracket
    threshold = scale(total, eps * eps);
  }

  OracleComplexity out;
  out.threshold = threshold;

  std::size_t n_possible = m + 1;  // smallest n that might satisfy the cut
  std::size_t n_certain = m + 1;   // smallest n that certainly satisfies it
  for (std::size_t n = 0; n <= m; ++n) {
    BoundedValue tail = tail_at(n);
    if (n_possible > m && tail.lower() <= threshold.upper()) n_possible = n;
    if (tail.upper() <= threshold.lower()) {
      n_certain = n;
      break;
    }
  }

  if (n_certain <= m && n_certain == n_possible) {
    out.conclusive = true;
    out.n = n_certain;
    out.tail_at_n = tail_at(n_certain);
  } else {
    out.conclusive = false;  // remainder straddles the cut; raise K
    out.n = std::min<std::size_t>(n_possible, m);
    out.tail_at_n = tail_at(out.n);
  }
  return out;
}

}  // namespace akf
