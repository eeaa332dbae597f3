#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lrp/matrix.hpp"
#include "lrp/random.hpp"

namespace lrp {

/// One elementary column transformation b_j <- b_j + lambda * b_i.
struct PairStep {
  int i = 0;
  int j = 0;
  std::int64_t lambda = 0;
  double delta = 0.0;  // measure change produced by this step
};

/// Basis, both quadratic forms, and the exactly-maintained integer transform.
/// Invariants: a = basisᵀ·basis, a_dual = a⁻¹, basis = (original basis)·t,
/// t·t_inv = I with det(t) = +1 throughout Seysen runs.
struct ReductionState {
  RealMatrix basis;
  RealMatrix a;
  RealMatrix a_dual;
  IntMatrix t;
  IntMatrix t_inv;
  std::vector<PairStep> log;

  int dim() const { return static_cast<int>(a.rows()); }
};

struct ReductionReport {
  std::size_t iterations = 0;          // basis transformations applied
  double initial_measure = 0.0;
  double final_measure = 0.0;
  std::vector<double> measure_trace;   // measure after each transformation
  std::size_t pair_evaluations = 0;    // candidate (i,j) inspections
  bool hit_iteration_cap = false;
};

/// Result of a full reduction: basis_reduced = basis_in · t exactly.
struct ReductionOutcome {
  RealMatrix basis;
  IntMatrix t;
  IntMatrix t_inv;
  ReductionReport report;
  std::vector<PairStep> steps;  // elementary column operations, in order
};

inline constexpr std::size_t kDefaultMaxIters = 10000;
inline constexpr double kDefaultLovaszDelta = 0.75;

/// Builds the state for a full-column-rank basis (columns are basis vectors).
ReductionState init_state(const RealMatrix& basis);

/// Dual basis B* = B·(BᵀB)⁻¹; satisfies BᵀB* = I.
RealMatrix dual_basis(const RealMatrix& basis);

/// Seysen measure S(A) = sum_i a_ii · a*_ii. Lower-bounded by the dimension,
/// with equality exactly when the basis is orthogonal.
double seysen_measure(const ReductionState& state);

/// Integer minimizer of the measure change for the ordered pair (i, j),
/// rounded half toward zero so that lambda != 0 implies a strict decrease.
std::int64_t lambda_opt(const ReductionState& state, int i, int j);

/// Closed-form measure change of applying b_j <- b_j + lambda·b_i:
///   2·lambda²·a_ii·a*_jj + 2·lambda·(a_ij·a*_jj − a*_ij·a_ii)
double measure_delta(const ReductionState& state, int i, int j, std::int64_t lambda);

/// Applies b_j <- b_j + lambda·b_i, updating basis, both quadratic forms,
/// t, t_inv, and the step log in place. Throws OverflowError (leaving the
/// state unchanged) when a transform entry leaves the int64 range.
void apply_pair(ReductionState& state, int i, int j, std::int64_t lambda);

/// True when no single pair transformation can decrease the measure.
bool is_s2_reduced(const ReductionState& state);

/// Recomputes the quadratic forms from the basis and verifies the in-place
/// updates have not drifted past `tol` (max-abs, relative to the form scale).
bool state_is_consistent(const ReductionState& state, double tol = 1e-8);

/// Greedy Seysen reduction: at each step applies the pair with the most
/// negative measure change; stops when none is negative.
ReductionOutcome reduce_greedy(const RealMatrix& basis,
                               std::size_t max_iters = kDefaultMaxIters);

/// Lazy Seysen reduction: picks uniformly among improving pairs.
ReductionOutcome reduce_lazy(const RealMatrix& basis, RandomStream& rng,
                             std::size_t max_iters = kDefaultMaxIters);

/// Textbook LLL with Lovász parameter delta in (0.25, 1]; output is
/// size-reduced (|mu_ij| <= 1/2) and satisfies the Lovász condition.
ReductionOutcome lll_reduce(const RealMatrix& basis,
                            double lovasz_delta = kDefaultLovaszDelta,
                            std::size_t max_iters = kDefaultMaxIters);

enum class Reducer { kSeysenGreedy, kSeysenLazy, kLll };

struct ReducerOptions {
  double lovasz_delta = kDefaultLovaszDelta;
  std::size_t max_iters = kDefaultMaxIters;
  std::uint64_t lazy_seed = 0;  // consumed by kSeysenLazy only
};

/// Dispatches to the chosen reduction algorithm.
ReductionOutcome run_reducer(const RealMatrix& basis, Reducer reducer,
                             const ReducerOptions& options = {});

/// Exact integer determinant (fraction-free elimination). Throws
/// OverflowError if an intermediate minor exceeds 128-bit range.
std::int64_t det_integer(const IntMatrix& m);

}  // namespace lrp
