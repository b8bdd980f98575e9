#include "akf/complexity.hpp"

#include <cmath>

#include "akf/errors.hpp"
#include "akf/spectrum.hpp"

namespace akf {

namespace {

BoundedValue threshold_for(const BoundedValue& trace_bv, double eps,
                           Criterion crit) {
  if (crit == Criterion::ABS) {
    return {eps * eps, fp_slack(eps * eps)};
  }
  return scale(trace_bv, eps * eps);
}

// ----------------------------------------------------------------------
// Heap path: emit eigenvalues in order, tail(n) = trace - prefix(n).
// Tracks the first possibly-sufficient and the first certainly-sufficient
// rank; they coincide exactly when the answer is certified.
// ----------------------------------------------------------------------

std::optional<ComplexityResult> heap_path(const ParameterFamily& family,
                                          std::uint64_t d, double eps,
                                          Criterion crit,
                                          const ComplexityOptions& options) {
  BoundedValue tr = trace(family, d, options.zeta_tol);
  BoundedValue thr = threshold_for(tr, eps, crit);

  ComplexityResult res;
  res.criterion = crit;
  res.path = ComplexityPath::Heap;
  res.threshold = thr;

  std::uint64_t n_possible = 0;
  bool possible_found = false;
  if (tr.lower() <= thr.upper()) {
    possible_found = true;  // n = 0 might already do
  }
  if (tr.upper() <= thr.lower()) {
    res.n = res.n_upper = 0;
    res.tail_at_n = tr;
    res.certified = true;
    return res;
  }

  EigenStream stream(family, d);
  for (std::uint64_t n = 1; n <= options.heap_budget; ++n) {
    stream.next();
    BoundedValue tail = tr - stream.emitted_sum();
    if (!possible_found && tail.lower() <= thr.upper()) {
      possible_found = true;
      n_possible = n;
    }
    if (tail.upper() <= thr.lower()) {
      res.n = n_possible;
      res.n_upper = n;
      res.tail_at_n = tail;
      res.certified = (n_possible == n);
      return res;
    }
  }
  return std::nullopt;  // budget exhausted
}

// ----------------------------------------------------------------------
// Level-set path: locate the tie class where the tail crosses the
// threshold by bisection on the counting function, then resolve the exact
// rank inside (or near) that class. Cost is proportional to the number of
// coordinate streams reaching the crossing level, never to n or d alone.
// ----------------------------------------------------------------------

struct LevelContext {
  const ParameterFamily* family;
  std::uint64_t d;
  LevelQuery query;
  BoundedValue trace_bv;
  BoundedValue threshold;

  LevelContext(const ParameterFamily& f, std::uint64_t dd, double eps,
               Criterion crit, double zeta_tol)
      : family(&f), d(dd), query(f, dd, zeta_tol) {
    trace_bv = trace(f, dd, zeta_tol);
    threshold = threshold_for(trace_bv, eps, crit);
  }

  // Tail after taking everything at or above `level`.
  BoundedValue tail_taking(double level, bool strict) const {
    return trace_bv - query.at(level, strict).tail_above;
  }
};

struct ClassView {
  double value = 0.0;          // the tie-class eigenvalue
  std::uint64_t rank_above = 0;  // eigenvalues strictly above it
  BoundedValue mass_above;
  std::uint64_t multiplicity = 0;
};

ClassView class_at(const LevelContext& ctx, double value) {
  ClassView cv;
  cv.value = value;
  LevelCount strict = ctx.query.at(value, /*strict=*/true);
  LevelCount incl = ctx.query.at(value, /*strict=*/false);
  cv.rank_above = strict.count;
  cv.mass_above = strict.tail_above;
  cv.multiplicity = incl.count - strict.count;
  return cv;
}

// Tail after n eigenvalues when rank n falls inside the given class.
BoundedValue tail_in_class(const LevelContext& ctx, const ClassView& cv,
                           std::uint64_t n) {
  double taken = static_cast<double>(n - cv.rank_above) * cv.value;
  BoundedValue t = ctx.trace_bv - cv.mass_above;
  return {t.value - taken, t.abs_error + fp_slack(taken) + fp_slack(t.value)};
}

// Smallest n with pred(tail(n)) true, walking tie classes from `start`.
// pred must be monotone in n (tails only shrink). Also reports the tail at
// the returned rank.
template <class Pred>
std::pair<std::uint64_t, BoundedValue> find_crossing(const LevelContext& ctx,
                                                     double start,
                                                     Pred pred) {
  constexpr int kMaxClassSteps = 200000;
  double value = start;
  ClassView cv = class_at(ctx, value);

  auto tail_of = [&](std::uint64_t n) { return tail_in_class(ctx, cv, n); };

  if (pred(tail_of(cv.rank_above))) {
    // Crossing is above this class: walk up until taking every eigenvalue
    // above some class no longer satisfies the predicate.
    for (int step = 0;; ++step) {
      if (step >= kMaxClassSteps) {
        throw numeric_error("level-set walk exceeded its class budget");
      }
      if (cv.rank_above == 0) return {0, tail_of(0)};
      std::optional<double> up = ctx.query.next_above(value);
      if (!up) throw numeric_error("level-set walk lost the class chain");
      value = *up;
      cv = class_at(ctx, value);
      if (!pred(tail_of(cv.rank_above))) break;  // crossing inside this class
    }
  } else {
    // Walk down until this class can absorb the crossing.
    for (int step = 0;; ++step) {
      if (step >= kMaxClassSteps) {
        throw numeric_error("level-set walk exceeded its class budget");
      }
      if (pred(tail_of(cv.rank_above + cv.multiplicity))) break;
      double down = ctx.query.next_below(value);
      if (!(down > 0.0) || down >= value) {
        throw numeric_error("level-set refinement ran out of classes");
      }
      value = down;
      cv = class_at(ctx, value);
    }
  }

  // Crossing rank lies in (rank_above, rank_above + multiplicity].
  std::uint64_t lo = cv.rank_above;
  std::uint64_t hi = cv.rank_above + cv.multiplicity;
  if (!pred(tail_of(hi))) {
    throw numeric_error("level-set refinement failed to bracket the rank");
  }
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pred(tail_of(mid))) hi = mid; else lo = mid;
  }
  return {hi, tail_of(hi)};
}

ComplexityResult levelset_path(const ParameterFamily& family, std::uint64_t d,
                               double eps, Criterion crit,
                               const ComplexityOptions& options) {
  LevelContext ctx(family, d, eps, crit, options.zeta_tol);

  ComplexityResult res;
  res.criterion = crit;
  res.path = ComplexityPath::LevelSet;
  res.threshold = ctx.threshold;

  if (ctx.trace_bv.upper() <= ctx.threshold.lower()) {
    res.n = res.n_upper = 0;
    res.tail_at_n = ctx.trace_bv;
    res.certified = true;
    return res;
  }

  // Bracket the crossing level: g(L) = tail after taking everything >= L
  // grows with L. March down from the top eigenvalue until the tail drops
  // under the threshold value, then bisect geometrically.
  double lambda_max =
      std::max(ctx.query.constant_eigenvalue().value, family.beta_at(1));
  double level_hi = 2.0 * lambda_max;
  double level_lo = lambda_max;
  for (int step = 0;; ++step) {
    if (step > 4000 || !(level_lo > 1e-300)) {
      throw numeric_error("level-set path: level underflow while bracketing");
    }
    BoundedValue g = ctx.tail_taking(level_lo, false);
    if (g.value <= ctx.threshold.value) break;
    level_hi = level_lo;
    level_lo *= 0.25;
  }
  for (int iter = 0; iter < 400 && level_hi / level_lo > 1.0 + 1e-12; ++iter) {
    double mid = std::sqrt(level_lo * level_hi);
    if (!(mid > level_lo && mid < level_hi)) break;
    BoundedValue g = ctx.tail_taking(mid, false);
    if (g.value <= ctx.threshold.value) level_lo = mid; else level_hi = mid;
  }

  // The crossing class is at or just below level_hi.
  double start = ctx.query.next_below(std::nextafter(level_hi, level_hi * 2.0));
  if (!(start > 0.0)) {
    throw numeric_error("level-set path: no eigenvalue class at the bracket");
  }

  const BoundedValue thr = ctx.threshold;
  auto certainly = [thr](const BoundedValue& tail) {
    return tail.upper() <= thr.lower();
  };
  auto possibly = [thr](const BoundedValue& tail) {
    return tail.lower() <= thr.upper();
  };

  auto [n_certain, tail_certain] = find_crossing(ctx, start, certainly);
  auto [n_possible, tail_possible] = find_crossing(ctx, start, possibly);
  if (n_possible > n_certain) {
    throw numeric_error("level-set certification brackets inverted");
  }

  res.n = n_possible;
  res.n_upper = n_certain;
  res.tail_at_n = tail_certain;
  res.certified = (n_possible == n_certain);
  return res;
}

}  // namespace

BoundedValue minimal_error(const ParameterFamily& family, std::uint64_t d,
                           std::uint64_t n, double zeta_tol) {
  BoundedValue tr = trace(family, d, zeta_tol);
  if (n == 0) return sqrt_bounded(tr);
  EigenStream stream(family, d);
  for (std::uint64_t i = 0; i < n; ++i) stream.next();
  return sqrt_bounded(tr - stream.emitted_sum());
}

ComplexityResult info_complexity(const ParameterFamily& family,
                                 std::uint64_t d, double eps, Criterion crit,
                                 const ComplexityOptions& options) {
  require_valid(family, d);
  if (!(eps > 0.0)) {
    throw validation_error("info_complexity: eps must be positive");
  }
  if (crit == Criterion::NOR && !(eps < 1.0)) {
    throw validation_error("info_complexity: NOR needs eps in (0,1)");
  }

  if (options.force_path == ComplexityPath::Heap) {
    auto res = heap_path(family, d, eps, crit, options);
    if (!res) {
      throw numeric_error(
          "heap path exhausted its emission budget; raise heap_budget or use "
          "the level-set path");
    }
    return *res;
  }
  if (options.force_path == ComplexityPath::LevelSet) {
    return levelset_path(family, d, eps, crit, options);
  }
  if (auto res = heap_path(family, d, eps, crit, options)) return *res;
  return levelset_path(family, d, eps, crit, options);
}

}  // namespace akf
