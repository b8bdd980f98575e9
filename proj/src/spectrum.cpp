#include "akf/spectrum.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>

#include "akf/errors.hpp"
#include "akf/special.hpp"

namespace akf {

bool label_tie_before(const EigenLabel& a, const EigenLabel& b) {
  if (a.kind != b.kind) return a.kind == EigenLabel::Kind::Constant;
  if (a.kind == EigenLabel::Kind::Constant) return false;
  if (a.j != b.j) return a.j < b.j;
  if (a.k != b.k) return a.k < b.k;
  return a.parity == Parity::Cos && b.parity == Parity::Sin;
}

EigenStream::EigenStream(const ParameterFamily& family, std::uint64_t d)
    : family_(&family), d_(d) {
  require_valid(family, d);
  CompensatedSum alpha_sum;
  for (std::uint64_t j = 1; j <= d; ++j) alpha_sum.add(family.alpha_at(j));
  constant_value_ = alpha_sum.value();
  next_coord_beta_ = family.beta_at(1);
}

void EigenStream::introduce_pending_coordinates() {
  // beta_j never increases, so a coordinate joins the frontier exactly when
  // the emission level falls to its head value.
  while (next_coord_ <= d_ &&
         (heap_.empty() || next_coord_beta_ >= heap_.top().value)) {
    double beta = next_coord_beta_;
    double sigma = family_->sigma_at(next_coord_);
    heap_.push(Head{beta, next_coord_, 1, beta, sigma});
    ++next_coord_;
    if (next_coord_ <= d_) next_coord_beta_ = family_->beta_at(next_coord_);
  }
}

Emission EigenStream::emit(double value, EigenLabel label) {
  sum_.add(value);
  ++count_;
  return {value, label};
}

Emission EigenStream::next() {
  if (pending_sin_) {
    Head h = *pending_sin_;
    pending_sin_.reset();
    double succ = h.beta / std::pow(static_cast<double>(h.k + 1), h.sigma);
    heap_.push(Head{succ, h.j, h.k + 1, h.beta, h.sigma});
    return emit(h.value, EigenLabel::oscillatory(h.j, h.k, Parity::Sin));
  }
  introduce_pending_coordinates();
  double top = heap_.empty() ? -1.0 : heap_.top().value;
  if (!constant_emitted_ && constant_value_ >= top) {
    constant_emitted_ = true;
    return emit(constant_value_, EigenLabel::constant());
  }
  Head h = heap_.top();
  heap_.pop();
  pending_sin_ = h;
  return emit(h.value, EigenLabel::oscillatory(h.j, h.k, Parity::Cos));
}

namespace {

// Frequencies of one coordinate stream passing the level comparison:
// max{k : beta / k^sigma >= level} (or > for strict). The floating floor of
// the inverse power is only a guess (the classic off-by-one hazard); every
// candidate is settled by evaluating the eigenvalue with the exact same
// double expression the enumeration emits, so counting, enumeration, and
// class walking can never disagree about a boundary value.
std::uint64_t coord_count(double beta, double sigma, double level,
                          bool strict) {
  auto passes = [&](std::uint64_t k) {
    double v = beta / std::pow(static_cast<double>(k), sigma);
    return strict ? v > level : v >= level;
  };
  if (!passes(1)) return 0;
  double x = std::pow(beta / level, 1.0 / sigma);
  if (!(x < 9.0e18)) throw numeric_error("level too small: count overflows");
  std::uint64_t k = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(x));
  while (k > 1 && !passes(k)) --k;
  while (passes(k + 1)) ++k;
  return k;
}

BoundedValue sum_alpha(const ParameterFamily& family,
                       std::uint64_t d) {
  CompensatedSum acc;
  for (std::uint64_t j = 1; j <= d; ++j) acc.add(family.alpha_at(j));
  return {acc.value(), acc.rounding_bound()};
}

// zeta values keyed on the argument's bit pattern; sigma_j repeats a lot
// (constant rules entirely), so this turns O(d) zeta work into O(distinct).
struct ZetaMemo {
  std::unordered_map<std::uint64_t, BoundedValue> by_bits;
  double tol = 1e-15;

  BoundedValue get(double p) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(p));
    std::memcpy(&bits, &p, sizeof(bits));
    auto it = by_bits.find(bits);
    if (it != by_bits.end()) return it->second;
    BoundedValue z = zeta(p, tol);
    by_bits.emplace(bits, z);
    return z;
  }
};

}  // namespace

struct LevelQuery::Cache : ZetaMemo {};

LevelQuery::LevelQuery(const ParameterFamily& family, std::uint64_t d,
                       double zeta_tol)
    : family_(&family), d_(d), cache_(new Cache) {
  require_valid(family, d);
  constant_ = sum_alpha(family, d);
  cache_->tol = zeta_tol;
}

LevelQuery::~LevelQuery() = default;

LevelCount LevelQuery::at(double level, bool strict) const {
  if (!(level > 0.0)) throw numeric_error("count_at_level: level must be positive");

  LevelCount out;
  CompensatedSum mass;
  double err = 0.0;

  bool constant_in =
      strict ? constant_.value > level : constant_.value >= level;
  if (constant_in) {
    out.count += 1;
    mass.add(constant_.value);
    err += constant_.abs_error;
  }

  for (std::uint64_t j = 1; j <= d_; ++j) {
    double beta = family_->beta_at(j);
    if (strict ? !(beta > level) : !(beta >= level)) break;  // later heads only smaller
    double sigma = family_->sigma_at(j);
    std::uint64_t k = coord_count(beta, sigma, level, strict);
    if (k == 0) continue;
    out.count += 2 * k;
    // sum_{i<=k} beta i^{-sigma} = beta (zeta(sigma) - tail(k, sigma))
    BoundedValue z = cache_->get(sigma);
    BoundedValue t = tail_power_sum(k, sigma, cache_->tol);
    mass.add(2.0 * beta * (z.value - t.value));
    err += 2.0 * beta * (z.abs_error + t.abs_error) +
           fp_slack(2.0 * beta * z.value);
  }

  out.tail_above = {mass.value(), err + mass.rounding_bound()};
  return out;
}

double LevelQuery::next_below(double level) const {
  double best = 0.0;
  for (std::uint64_t j = 1; j <= d_; ++j) {
    double beta = family_->beta_at(j);
    if (beta < level) {
      // first coordinate whose whole stream sits below the level; its head
      // dominates every later stream
      best = std::max(best, beta);
      break;
    }
    double sigma = family_->sigma_at(j);
    std::uint64_t k = coord_count(beta, sigma, level, /*strict=*/false);
    best = std::max(best, beta / std::pow(static_cast<double>(k + 1), sigma));
  }
  if (constant_.value < level) best = std::max(best, constant_.value);
  return best;
}

std::optional<double> LevelQuery::next_above(double level) const {
  std::optional<double> best;
  auto consider = [&best](double v) {
    if (!best || v < *best) best = v;
  };
  for (std::uint64_t j = 1; j <= d_; ++j) {
    double beta = family_->beta_at(j);
    if (!(beta > level)) break;
    double sigma = family_->sigma_at(j);
    std::uint64_t k = coord_count(beta, sigma, level, /*strict=*/true);
    consider(beta / std::pow(static_cast<double>(k), sigma));
  }
  if (constant_.value > level) consider(constant_.value);
  return best;
}

LevelCount count_at_level(const ParameterFamily& family, std::uint64_t d,
                          double level, bool strict) {
  return LevelQuery(family, d).at(level, strict);
}

BoundedValue trace(const ParameterFamily& family, std::uint64_t d,
                   double zeta_tol) {
  require_valid(family, d);
  ZetaMemo cache;
  cache.tol = zeta_tol;
  CompensatedSum acc;
  double err = 0.0;
  for (std::uint64_t j = 1; j <= d; ++j) {
    acc.add(family.alpha_at(j));
    double beta = family.beta_at(j);
    BoundedValue z = cache.get(family.sigma_at(j));
    acc.add(2.0 * beta * z.value);
    err += 2.0 * beta * z.abs_error;
  }
  return {acc.value(), err + acc.rounding_bound()};
}

BoundedValue tau_trace(const ParameterFamily& family, std::uint64_t d,
                       double tau, double zeta_tol) {
  require_valid(family, d);
  if (!(tau > 0.0 && tau < 1.0)) {
    throw numeric_error("tau_trace: tau must lie in (0,1)");
  }
  double sigma1 = family.sigma_at(1);
  if (!(tau * sigma1 > 1.0 + kZetaPoleGuard)) {
    throw numeric_error("tau_trace diverges: tau * sigma_1 = " +
                        format_double(tau * sigma1) + " must exceed 1");
  }

  BoundedValue constant = sum_alpha(family, d);
  BoundedValue head = pow_bounded(constant, tau);

  ZetaMemo cache;
  cache.tol = zeta_tol;
  CompensatedSum acc;
  acc.add(head.value);
  double err = head.abs_error;
  for (std::uint64_t j = 1; j <= d; ++j) {
    double beta_tau = std::pow(family.beta_at(j), tau);
    BoundedValue z = cache.get(tau * family.sigma_at(j));
    acc.add(2.0 * beta_tau * z.value);
    err += 2.0 * beta_tau * z.abs_error + fp_slack(beta_tau);
  }
  return {acc.value(), err + acc.rounding_bound()};
}

double next_level_below(const ParameterFamily& family, std::uint64_t d,
                        double level) {
  return LevelQuery(family, d).next_below(level);
}

std::optional<double> next_level_above(const ParameterFamily& family,
                                       std::uint64_t d, double level) {
  return LevelQuery(family, d).next_above(level);
}

}  // namespace akf

