#pragma once

#include <optional>
#include <utility>

#include "tripart/model.hpp"
#include "tripart/state.hpp"

namespace tripart {

struct Truncation {
    int cavity = 5;
    int mech = 5;

    HilbertSpace space() const { return {cavity, mech}; }
    Truncation doubled() const { return {2 * cavity, 2 * mech}; }
    bool operator==(const Truncation&) const = default;
};

struct SolveReport {
    double residual_norm = 0.0;  // ||L vec(rho_ss)||_2
    bool truncation_checked = false;
    bool truncation_converged = false;
    /// Largest relative observable change between base and doubled levels.
    double truncation_change = 0.0;
    Truncation levels_used;
};

struct SteadyStateOptions {
    double residual_tol = 1e-10;
    /// Raw solution may deviate from Hermitian by at most this before
    /// Hermitization; larger defects are reported, not repaired.
    double hermitian_tol = 1e-8;
    /// A unit-trace PSD matrix has |rho_ij| <= 1; anything far beyond means the
    /// trace-replaced system was singular.
    double max_entry = 1.0 + 1e-6;
};

/// Replaces one row of L by the trace functional and solves with sparse LU.
/// Throws NonUniqueSteadyStateError if the replaced system is singular,
/// ConvergenceError if the residual exceeds tolerance.
std::pair<DensityMatrix, SolveReport> solve_steady(const Liouvillian& liouvillian,
                                                   const HilbertSpace& space,
                                                   const SteadyStateOptions& options = {});

/// Convenience: build L for `params` on `levels` and solve.
std::pair<DensityMatrix, SolveReport> solve_steady(const SystemParams& params, Truncation levels,
                                                   const SteadyStateOptions& options = {});

struct EvolveResult {
    DensityMatrix state;
    double time = 0.0;
    long steps = 0;
    double derivative_norm = 0.0;  // ||L vec(rho)||_2 at the returned state
    double max_trace_drift = 0.0;  // max |tr rho(t) - tr rho(0)| along the path
};

/// Fixed-step classical RK4 on d vec(rho)/dt = L vec(rho) until
/// ||L vec(rho)|| < derivative_tol or t_max. Throws ConvergenceError with the
/// final derivative norm when t_max is reached first.
EvolveResult evolve_to_steady(const Liouvillian& liouvillian, const DensityMatrix& initial,
                              double t_max, double step, double derivative_tol = 1e-10);

/// 0.001 / max_rate, reduced if needed to stay inside the RK4 stability region
/// of `liouvillian`.
double default_evolve_step(const SystemParams& params, const Liouvillian& liouvillian);

/// Largest step keeping h * ||L||_1 inside the RK4 stability disc with margin.
double stable_evolve_step(const Liouvillian& liouvillian);

/// Solves at `base` and at doubled levels and compares every reported
/// observable. Converged iff each relative change is below `tolerance`;
/// values below `absolute_floor` in both runs count as equal.
SolveReport check_truncation(const SystemParams& params, Truncation base, double tolerance = 1e-6,
                             double absolute_floor = 1e-12);

}  // namespace tripart
