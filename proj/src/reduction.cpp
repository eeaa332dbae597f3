#include "lrp/reduction.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

namespace lrp {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("integer transform entry overflowed in addition");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer transform entry overflowed in multiplication");
  }
  return r;
}

std::int64_t round_half_toward_zero(double x) {
  if (!(std::abs(x) < 9.0e18)) {
    throw OverflowError("pair coefficient exceeds 64-bit integer range");
  }
  const double ax = std::abs(x);
  const double base = std::floor(ax);
  const double rounded = (ax - base > 0.5) ? base + 1.0 : base;
  return static_cast<std::int64_t>(std::copysign(rounded, x));
}

void require_pair(const ReductionState& state, int i, int j) {
  const int n = state.dim();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    throw DimensionError("pair indices must be distinct and within the basis");
  }
}

double current_measure(const ReductionState& state) {
  double s = 0.0;
  for (int k = 0; k < state.dim(); ++k) s += state.a(k, k) * state.a_dual(k, k);
  return s;
}

struct PairChoice {
  int i = -1;
  int j = -1;
  std::int64_t lambda = 0;
  double delta = 0.0;
};

ReductionOutcome finish(ReductionState&& state, ReductionReport&& report) {
  report.final_measure = current_measure(state);
  return ReductionOutcome{std::move(state.basis), std::move(state.t),
                          std::move(state.t_inv), std::move(report),
                          std::move(state.log)};
}

}  // namespace

ReductionState init_state(const RealMatrix& basis) {
  if (basis.cols() > basis.rows()) {
    throw DimensionError("basis must have at least as many rows as columns");
  }
  if (!is_finite(basis)) {
    throw DimensionError("basis entries must be finite");
  }
  ReductionState state;
  state.basis = basis;
  state.a = gram(basis);
  state.a_dual = invert_spd(state.a);  // throws SingularityError if rank-deficient
  const Eigen::Index n = basis.cols();
  state.t = IntMatrix::Identity(n, n);
  state.t_inv = IntMatrix::Identity(n, n);
  return state;
}

RealMatrix dual_basis(const RealMatrix& basis) {
  return basis * invert_spd(gram(basis));
}

double seysen_measure(const ReductionState& state) { return current_measure(state); }

std::int64_t lambda_opt(const ReductionState& state, int i, int j) {
  require_pair(state, i, j);
  const double x = 0.5 * (state.a_dual(i, j) / state.a_dual(j, j) -
                          state.a(i, j) / state.a(i, i));
  return round_half_toward_zero(x);
}

double measure_delta(const ReductionState& state, int i, int j, std::int64_t lambda) {
  require_pair(state, i, j);
  const double l = static_cast<double>(lambda);
  return 2.0 * l * l * state.a(i, i) * state.a_dual(j, j) +
         2.0 * l * (state.a(i, j) * state.a_dual(j, j) -
                    state.a_dual(i, j) * state.a(i, i));
}

void apply_pair(ReductionState& state, int i, int j, std::int64_t lambda) {
  require_pair(state, i, j);
  if (lambda == 0) {
    throw DimensionError("apply_pair requires a nonzero coefficient");
  }
  const int n = state.dim();

  // Stage the integer updates first so an overflow leaves the state intact.
  IntVector t_col(n), tinv_row(n);
  for (int r = 0; r < n; ++r) {
    t_col(r) = checked_add(state.t(r, j), checked_mul(lambda, state.t(r, i)));
  }
  for (int c = 0; c < n; ++c) {
    tinv_row(c) = checked_add(state.t_inv(i, c), -checked_mul(lambda, state.t_inv(j, c)));
  }

  const double change = measure_delta(state, i, j, lambda);
  const double l = static_cast<double>(lambda);

  state.basis.col(j) += l * state.basis.col(i);
  // A <- (T_ij)ᵀ A T_ij: column then row.
  state.a.col(j) += l * state.a.col(i);
  state.a.row(j) += l * state.a.row(i);
  // A* <- T_ij⁻¹ A* T_ij⁻ᵀ: column then row with the opposite sign.
  state.a_dual.col(i) -= l * state.a_dual.col(j);
  state.a_dual.row(i) -= l * state.a_dual.row(j);

  state.t.col(j) = t_col;
  state.t_inv.row(i) = tinv_row.transpose();
  state.log.push_back(PairStep{i, j, lambda, change});

#ifndef NDEBUG
  assert(state_is_consistent(state, 1e-6));
#endif
}

bool is_s2_reduced(const ReductionState& state) {
  const int n = state.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && lambda_opt(state, i, j) != 0) return false;
    }
  }
  return true;
}

bool state_is_consistent(const ReductionState& state, double tol) {
  const RealMatrix a_ref = gram(state.basis);
  const double scale = std::max(1.0, a_ref.cwiseAbs().maxCoeff());
  if (((state.a - a_ref).cwiseAbs().maxCoeff()) > tol * scale) return false;
  const RealMatrix prod = state.a * state.a_dual;
  const Eigen::Index n = state.a.rows();
  return (prod - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol * scale;
}

namespace {

ReductionOutcome reduce_seysen(const RealMatrix& basis, std::size_t max_iters,
                               RandomStream* rng) {
  ReductionState state = init_state(basis);
  const int n = state.dim();

  ReductionReport report;
  report.initial_measure = current_measure(state);
  report.measure_trace.push_back(report.initial_measure);

  std::vector<PairChoice> candidates;
  for (;;) {
    PairChoice best;
    candidates.clear();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        ++report.pair_evaluations;
        const std::int64_t lambda = lambda_opt(state, i, j);
        if (lambda == 0) continue;
        const double change = measure_delta(state, i, j, lambda);
        if (change >= 0.0) continue;  // fp-borderline pair, no strict decrease
        if (rng != nullptr) {
          candidates.push_back(PairChoice{i, j, lambda, change});
        } else if (change < best.delta) {
          best = PairChoice{i, j, lambda, change};
        }
      }
    }
    PairChoice chosen;
    if (rng != nullptr) {
      if (candidates.empty()) break;
      chosen = candidates[rng->uniform_below(candidates.size())];
    } else {
      if (best.i < 0) break;
      chosen = best;
    }
    if (report.iterations >= max_iters) {
      report.hit_iteration_cap = true;
      break;
    }
    apply_pair(state, chosen.i, chosen.j, chosen.lambda);
    ++report.iterations;
    report.measure_trace.push_back(current_measure(state));
  }
  return finish(std::move(state), std::move(report));
}

}  // namespace

ReductionOutcome reduce_greedy(const RealMatrix& basis, std::size_t max_iters) {
  return reduce_seysen(basis, max_iters, nullptr);
}

ReductionOutcome reduce_lazy(const RealMatrix& basis, RandomStream& rng,
                             std::size_t max_iters) {
  return reduce_seysen(basis, max_iters, &rng);
}

namespace {

// Gram-Schmidt data for LLL: mu (strictly lower) and squared norms of the
// orthogonalized vectors.
struct Gso {
  RealMatrix mu;
  RealMatrix bstar;
  RealVector norms_sq;
};

Gso compute_gso(const RealMatrix& b) {
  const Eigen::Index n = b.cols();
  Gso g{RealMatrix::Zero(n, n), b, RealVector::Zero(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < k; ++j) {
      g.mu(k, j) = b.col(k).dot(g.bstar.col(j)) / g.norms_sq(j);
      g.bstar.col(k) -= g.mu(k, j) * g.bstar.col(j);
    }
    g.norms_sq(k) = g.bstar.col(k).squaredNorm();
    if (!(g.norms_sq(k) > 0.0)) {
      throw SingularityError("basis is numerically rank-deficient");
    }
  }
  return g;
}

}  // namespace

ReductionOutcome lll_reduce(const RealMatrix& basis, double lovasz_delta,
                            std::size_t max_iters) {
  if (!(lovasz_delta > 0.25 && lovasz_delta <= 1.0)) {
    throw DimensionError("Lovász parameter must lie in (0.25, 1]");
  }
  ReductionState state = init_state(basis);
  const int n = state.dim();

  ReductionReport report;
  report.initial_measure = current_measure(state);
  report.measure_trace.push_back(report.initial_measure);

  auto column_op = [&](int k, int j, std::int64_t q) {
    // b_k <- b_k - q·b_j with exact bookkeeping of t and t_inv.
    IntVector t_col(n), tinv_row(n);
    for (int r = 0; r < n; ++r) {
      t_col(r) = checked_add(state.t(r, k), -checked_mul(q, state.t(r, j)));
    }
    for (int c = 0; c < n; ++c) {
      tinv_row(c) = checked_add(state.t_inv(j, c), checked_mul(q, state.t_inv(k, c)));
    }
    state.basis.col(k) -= static_cast<double>(q) * state.basis.col(j);
    state.t.col(k) = t_col;
    state.t_inv.row(j) = tinv_row.transpose();
    ++report.iterations;
  };

  Gso g = compute_gso(state.basis);
  int k = 1;
  while (k < n && report.iterations < max_iters) {
    // Size-reduce b_k against b_{k-1}, ..., b_0.
    for (int j = k - 1; j >= 0; --j) {
      ++report.pair_evaluations;
      if (!(std::abs(g.mu(k, j)) < 9.0e18)) {
        throw OverflowError("size-reduction coefficient exceeds 64-bit range");
      }
      const std::int64_t q = std::llround(g.mu(k, j));
      if (q == 0) continue;
      column_op(k, j, q);
      for (int l = 0; l < j; ++l) g.mu(k, l) -= static_cast<double>(q) * g.mu(j, l);
      g.mu(k, j) -= static_cast<double>(q);
    }
    ++report.pair_evaluations;  // Lovász test
    if (g.norms_sq(k) >= (lovasz_delta - g.mu(k, k - 1) * g.mu(k, k - 1)) * g.norms_sq(k - 1)) {
      ++k;
    } else {
      state.basis.col(k).swap(state.basis.col(k - 1));
      state.t.col(k).swap(state.t.col(k - 1));
      state.t_inv.row(k).swap(state.t_inv.row(k - 1));
      ++report.iterations;
      g = compute_gso(state.basis);
      k = std::max(k - 1, 1);
    }
  }
  if (k < n) report.hit_iteration_cap = true;

  // Recompute the forms so the returned state invariants hold for callers.
  state.a = gram(state.basis);
  state.a_dual = invert_spd(state.a);
  report.measure_trace.push_back(current_measure(state));
  return finish(std::move(state), std::move(report));
}

ReductionOutcome run_reducer(const RealMatrix& basis, Reducer reducer,
                             const ReducerOptions& options) {
  switch (reducer) {
    case Reducer::kSeysenGreedy:
      return reduce_greedy(basis, options.max_iters);
    case Reducer::kSeysenLazy: {
      RandomStream rng(options.lazy_seed);
      return reduce_lazy(basis, rng, options.max_iters);
    }
    case Reducer::kLll:
      return lll_reduce(basis, options.lovasz_delta, options.max_iters);
  }
  throw DimensionError("unknown reducer");
}

std::int64_t det_integer(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("determinant requires a square matrix");
  }
  using Wide = __int128;
  const auto checked_mul_wide = [](Wide a, Wide b) -> Wide {
    if (a == 0 || b == 0) return 0;
    const Wide limit = (~static_cast<unsigned __int128>(0)) >> 1;  // int128 max
    Wide aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
    if (aa > limit / bb) throw OverflowError("determinant intermediate overflow");
    return a * b;
  };

  const int n = static_cast<int>(m.rows());
  std::vector<Wide> w(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) w[static_cast<std::size_t>(r) * n + c] = m(r, c);
  auto at = [&](int r, int c) -> Wide& { return w[static_cast<std::size_t>(r) * n + c]; };

  int sign = 1;
  Wide prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c) {
        const Wide num = checked_mul_wide(at(r, c), at(k, k)) -
                         checked_mul_wide(at(r, k), at(k, c));
        at(r, c) = num / prev;  // Bareiss division is exact
      }
      at(r, k) = 0;
    }
    prev = at(k, k);
  }
  const Wide det = sign * at(n - 1, n - 1);
  if (det > std::numeric_limits<std::int64_t>::max() ||
      det < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("determinant exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(det);
}

}  // namespace lrp
