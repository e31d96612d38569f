#include "tripart/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/SparseLU>

#include "tripart/errors.hpp"
#include "tripart/kernels.hpp"
#include "tripart/observables.hpp"

namespace tripart {

namespace {

// Connected components of the undirected sparsity graph of L. The steady
// state lives in the block holding the diagonal (trace) entries of vec(rho);
// every other block has no trace and, when the stationary state is unique, is
// nonsingular, so its part of the solution is zero.
std::vector<std::ptrdiff_t> component_labels(const Operator& l) {
    const std::ptrdiff_t n = l.rows();
    std::vector<std::ptrdiff_t> parent(static_cast<std::size_t>(n));
    for (std::ptrdiff_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&parent](std::ptrdiff_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::ptrdiff_t c = 0; c < l.outerSize(); ++c) {
        for (Operator::InnerIterator it(l, c); it; ++it) {
            const std::ptrdiff_t a = find(it.row());
            const std::ptrdiff_t b = find(it.col());
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    for (std::ptrdiff_t i = 0; i < n; ++i) parent[i] = find(i);
    return parent;
}

// Sub-block of L on `nodes`, with its first row (node 0 = rho(0,0)) replaced
// by the trace functional restricted to the block.
Operator trace_replaced_block(const Operator& l, const std::vector<std::ptrdiff_t>& nodes,
                              const std::vector<std::ptrdiff_t>& local, int dim) {
    const auto size = static_cast<std::ptrdiff_t>(nodes.size());
    std::vector<Eigen::Triplet<cplx, std::ptrdiff_t>> t;
    for (std::ptrdiff_t j = 0; j < size; ++j) {
        for (Operator::InnerIterator it(l, nodes[j]); it; ++it) {
            const std::ptrdiff_t row = local[it.row()];
            if (row > 0) t.emplace_back(row, j, it.value());
        }
    }
    for (int i = 0; i < dim; ++i) t.emplace_back(0, local[static_cast<std::ptrdiff_t>(i) * dim + i], 1.0);
    Operator a(size, size);
    a.setFromTriplets(t.begin(), t.end());
    a.makeCompressed();
    return a;
}

double one_norm(const Operator& op) {
    double best = 0.0;
    for (std::ptrdiff_t c = 0; c < op.outerSize(); ++c) {
        double s = 0.0;
        for (Operator::InnerIterator it(op, c); it; ++it) s += std::abs(it.value());
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

std::pair<DensityMatrix, SolveReport> solve_steady(const Liouvillian& liouvillian,
                                                   const HilbertSpace& space,
                                                   const SteadyStateOptions& options) {
    const int dim = space.total_dim();
    if (liouvillian.state_dim != dim) {
        throw DimensionError("solve_steady: Liouvillian built for dimension " +
                             std::to_string(liouvillian.state_dim) + ", space has " +
                             std::to_string(dim));
    }
    const Operator& l = liouvillian.matrix;
    const std::vector<std::ptrdiff_t> label = component_labels(l);
    const std::ptrdiff_t root = label[0];
    for (int i = 1; i < dim; ++i) {
        if (label[static_cast<std::ptrdiff_t>(i) * dim + i] != root) {
            throw NonUniqueSteadyStateError(
                "solve_steady: populations split into decoupled blocks; the stationary "
                "manifold is not one-dimensional");
        }
    }
    std::vector<std::ptrdiff_t> nodes;
    std::vector<std::ptrdiff_t> local(static_cast<std::size_t>(l.rows()), -1);
    for (std::ptrdiff_t i = 0; i < l.rows(); ++i) {
        if (label[i] == root) {
            local[i] = static_cast<std::ptrdiff_t>(nodes.size());
            nodes.push_back(i);
        }
    }

    const Operator a = trace_replaced_block(l, nodes, local, dim);
    Eigen::SparseLU<Operator, Eigen::COLAMDOrdering<std::ptrdiff_t>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success) {
        throw NonUniqueSteadyStateError("solve_steady: trace-replaced Liouvillian is singular (" +
                                        lu.lastErrorMessage() + ")");
    }

    Vector rhs = Vector::Zero(a.rows());
    rhs(0) = 1.0;
    Vector xb = lu.solve(rhs);
    // One step of iterative refinement; cheap next to the factorization.
    if (lu.info() == Eigen::Success && xb.allFinite()) {
        const Vector r = rhs - a * xb;
        xb += lu.solve(r);
    }
    if (lu.info() != Eigen::Success || !xb.allFinite() ||
        xb.cwiseAbs().maxCoeff() > options.max_entry) {
        throw NonUniqueSteadyStateError(
            "solve_steady: trace-replaced system is numerically singular; the stationary "
            "manifold is not one-dimensional");
    }
    Vector x = Vector::Zero(l.rows());
    for (std::size_t k = 0; k < nodes.size(); ++k) x(nodes[k]) = xb(static_cast<Eigen::Index>(k));

    DenseMatrix rho = unvectorize(x, dim);
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > options.hermitian_tol) {
        std::ostringstream os;
        os << "solve_steady: raw steady state non-Hermitian by " << herm;
        throw ConsistencyError(os.str());
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();

    SolveReport report;
    report.levels_used = {space.cavity_levels(), space.mech_levels()};
    report.residual_norm = (liouvillian.matrix * vectorize(rho)).norm();
    if (report.residual_norm > options.residual_tol) {
        std::ostringstream os;
        os << "solve_steady: residual " << report.residual_norm << " above tolerance "
           << options.residual_tol;
        throw ConvergenceError(os.str());
    }
    return {DensityMatrix::checked(std::move(rho)), report};
}

std::pair<DensityMatrix, SolveReport> solve_steady(const SystemParams& params, Truncation levels,
                                                   const SteadyStateOptions& options) {
    const HilbertSpace space = levels.space();
    return solve_steady(build_liouvillian(params, space), space, options);
}

double stable_evolve_step(const Liouvillian& liouvillian) {
    // RK4 is stable on the disc of radius ~2.5 about the origin's left half.
    const double norm = one_norm(liouvillian.matrix);
    return norm > 0.0 ? 2.0 / norm : 1.0;
}

double default_evolve_step(const SystemParams& params, const Liouvillian& liouvillian) {
    return std::min(1e-3 / params.max_rate(), stable_evolve_step(liouvillian));
}

EvolveResult evolve_to_steady(const Liouvillian& liouvillian, const DensityMatrix& initial,
                              double t_max, double step, double derivative_tol) {
    if (!(step > 0.0) || !(t_max >= 0.0)) {
        throw ParameterError("evolve_to_steady: step must be > 0 and t_max >= 0");
    }
    const int dim = initial.dim();
    if (liouvillian.state_dim != dim) {
        throw DimensionError("evolve_to_steady: state and Liouvillian dimensions differ");
    }
    const CsrMatrix l = CsrMatrix::from(liouvillian.matrix);
    const auto n = static_cast<std::size_t>(l.rows);
    std::vector<cplx> x(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
    {
        const Vector v = vectorize(initial.matrix());
        std::copy(v.data(), v.data() + v.size(), x.begin());
    }
    auto trace_of = [dim](const std::vector<cplx>& v) {
        cplx t = 0.0;
        for (int i = 0; i < dim; ++i) t += v[static_cast<std::size_t>(i) * dim + i];
        return t;
    };
    auto norm_of = [](const std::vector<cplx>& v) {
        double s = 0.0;
        for (const cplx& z : v) s += std::norm(z);
        return std::sqrt(s);
    };

    const cplx trace0 = trace_of(x);
    EvolveResult result{DensityMatrix::unchecked(initial.matrix()), 0.0, 0, 0.0, 0.0};
    const auto max_steps = static_cast<long>(std::ceil(t_max / step));
    double t = 0.0;
    long steps = 0;
    while (true) {
        spmv_parallel(l, x, k1);
        const double dnorm = norm_of(k1);
        if (dnorm < derivative_tol || steps >= max_steps) {
            result.derivative_norm = dnorm;
            break;
        }
        axpy_parallel(x, 0.5 * step, k1, tmp);
        spmv_parallel(l, tmp, k2);
        axpy_parallel(x, 0.5 * step, k2, tmp);
        spmv_parallel(l, tmp, k3);
        axpy_parallel(x, step, k3, tmp);
        spmv_parallel(l, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        ++steps;
        t += step;
        result.max_trace_drift = std::max(result.max_trace_drift, std::abs(trace_of(x) - trace0));
    }

    result.time = t;
    result.steps = steps;
    if (result.derivative_norm >= derivative_tol) {
        std::ostringstream os;
        os << "evolve_to_steady: not converged by t_max = " << t_max
           << ", final ||drho/dt|| = " << result.derivative_norm;
        throw ConvergenceError(os.str());
    }
    Vector v(static_cast<Eigen::Index>(n));
    std::copy(x.begin(), x.end(), v.data());
    result.state = DensityMatrix::unchecked(unvectorize(v, dim));
    return result;
}

SolveReport check_truncation(const SystemParams& params, Truncation base, double tolerance,
                             double absolute_floor) {
    if (base.cavity < 2 || base.mech < 2) {
        throw DimensionError("check_truncation: base levels must be at least (2, 2)");
    }
    const Truncation big = base.doubled();
    const auto [rho_base, report_base] = solve_steady(params, base);
    const auto [rho_big, report_big] = solve_steady(params, big);
    const ObservableRecord lo = evaluate(rho_base, base.space());
    const ObservableRecord hi = evaluate(rho_big, big.space());

    SolveReport report = report_base;
    report.truncation_checked = true;
    report.truncation_change = max_relative_change(lo, hi, absolute_floor);
    report.truncation_converged = report.truncation_change < tolerance;
    return report;
}

}  // namespace tripart
