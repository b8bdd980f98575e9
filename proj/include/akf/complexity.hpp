#pragma once

#include <cstdint>
#include <optional>

#include "akf/bounded.hpp"
#include "akf/params.hpp"

namespace akf {

// ABS compares the tail against eps^2; NOR against eps^2 * trace.
enum class Criterion { ABS, NOR };

enum class ComplexityPath { Heap, LevelSet };

struct ComplexityOptions {
  // The heap path emits eigenvalues one by one; past this budget the
  // level-set path takes over (binary search on the spectral counting
  // function plus local refinement).
  std::uint64_t heap_budget = 1'000'000;
  std::optional<ComplexityPath> force_path;
  double zeta_tol = 1e-15;
};

struct ComplexityResult {
  // Minimal certified n. When not certified, [n, n_upper] brackets the
  // answer: n is the smallest possibly-sufficient rank, n_upper the smallest
  // certainly-sufficient one; tightening zeta_tol resolves the ambiguity.
  std::uint64_t n = 0;
  std::uint64_t n_upper = 0;
  BoundedValue tail_at_n;
  BoundedValue threshold;
  bool certified = false;
  Criterion criterion = Criterion::ABS;
  ComplexityPath path = ComplexityPath::Heap;
};

// nth minimal average-case error: sqrt(trace - sum of the n largest
// eigenvalues). n = 0 gives the initial error sqrt(trace).
BoundedValue minimal_error(const ParameterFamily& family, std::uint64_t d,
                           std::uint64_t n, double zeta_tol = 1e-15);

// Information complexity: minimal n with tail(n) <= eps^2 * CRI^2.
// eps must lie in (0,1) for NOR; ABS additionally accepts eps >= 1 (the
// criterion stays meaningful there and the NOR/ABS rescaling bound needs it).
ComplexityResult info_complexity(const ParameterFamily& family,
                                 std::uint64_t d, double eps, Criterion crit,
                                 const ComplexityOptions& options = {});

}  // namespace akf
