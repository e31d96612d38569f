#include "tripart/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tripart/errors.hpp"

namespace tripart {

namespace {

void require_space(const DensityMatrix& state, const HilbertSpace& space) {
    if (state.dim() != space.total_dim()) {
        throw DimensionError("state dimension " + std::to_string(state.dim()) +
                             " does not match space dimension " + std::to_string(space.total_dim()));
    }
}

// Tr(rho f(n, m)) for a function diagonal in the Fock basis. The imaginary
// part of a Hermitian matrix's diagonal is roundoff; only the real part is used.
template <class F>
double diagonal_expectation(const DensityMatrix& state, const HilbertSpace& space, F&& f) {
    require_space(state, space);
    double sum = 0.0;
    for (int s = 0; s < 2; ++s) {
        for (int n = 0; n <= space.cavity_levels(); ++n) {
            for (int m = 0; m <= space.mech_levels(); ++m) {
                const int i = space.index(static_cast<AtomLevel>(s), n, m);
                sum += state(i, i).real() * f(n, m);
            }
        }
    }
    return sum;
}

}  // namespace

NamedElements NamedElements::from_values(const std::array<double, 8>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

double mean_number(const DensityMatrix& state, FieldMode mode, const HilbertSpace& space) {
    const double v = diagonal_expectation(state, space, [mode](int n, int m) {
        return static_cast<double>(mode == FieldMode::cavity ? n : m);
    });
    return std::max(v, 0.0);
}

std::optional<double> g2_auto(const DensityMatrix& state, FieldMode mode, const HilbertSpace& space,
                              double floor) {
    const double mean = mean_number(state, mode, space);
    if (mean < floor) return std::nullopt;
    const double pairs = diagonal_expectation(state, space, [mode](int n, int m) {
        const double k = mode == FieldMode::cavity ? n : m;
        return k * (k - 1.0);
    });
    return pairs / (mean * mean);
}

std::optional<double> g2_cross(const DensityMatrix& state, const HilbertSpace& space, double floor) {
    const double n = mean_number(state, FieldMode::cavity, space);
    const double m = mean_number(state, FieldMode::mech, space);
    if (n < floor || m < floor) return std::nullopt;
    const double nm = diagonal_expectation(
        state, space, [](int a, int b) { return static_cast<double>(a) * static_cast<double>(b); });
    return nm / (n * m);
}

ReducedState partial_trace_atom(const DensityMatrix& state, const HilbertSpace& space) {
    require_space(state, space);
    const int f = space.field_dim();
    const DenseMatrix& r = state.matrix();
    return {r.topLeftCorner(f, f) + r.bottomRightCorner(f, f), space.cavity_dim(), space.mech_dim()};
}

DenseMatrix partial_transpose(const ReducedState& reduced, FieldMode mode) {
    const int na = reduced.cavity_dim;
    const int nb = reduced.mech_dim;
    if (reduced.matrix.rows() != na * nb || reduced.matrix.cols() != na * nb) {
        throw DimensionError("partial_transpose: matrix does not match subsystem dimensions");
    }
    DenseMatrix out(na * nb, na * nb);
    for (int n = 0; n < na; ++n) {
        for (int m = 0; m < nb; ++m) {
            for (int n2 = 0; n2 < na; ++n2) {
                for (int m2 = 0; m2 < nb; ++m2) {
                    const cplx v = reduced.matrix(n * nb + m, n2 * nb + m2);
                    if (mode == FieldMode::cavity) {
                        out(n2 * nb + m, n * nb + m2) = v;
                    } else {
                        out(n * nb + m2, n2 * nb + m) = v;
                    }
                }
            }
        }
    }
    return out;
}

double log_negativity(const ReducedState& reduced, const HilbertSpace& space, FieldMode transposed) {
    if (reduced.cavity_dim != space.cavity_dim() || reduced.mech_dim != space.mech_dim()) {
        throw DimensionError("log_negativity: reduced state does not match space");
    }
    const DenseMatrix pt = partial_transpose(reduced, transposed);
    const double defect = (pt - pt.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-8) {
        std::ostringstream os;
        os << "log_negativity: partial transpose non-Hermitian by " << defect;
        throw ConsistencyError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
    const double norm = es.eigenvalues().cwiseAbs().sum();
    const double en = std::log2(norm);
    if (en < -1e-10) {
        std::ostringstream os;
        os << "log_negativity: trace norm " << norm << " below 1";
        throw ConsistencyError(os.str());
    }
    return std::max(en, 0.0);
}

NamedElements named_elements(const DensityMatrix& state, const HilbertSpace& space) {
    require_space(state, space);
    const int g00 = space.index(AtomLevel::g, 0, 0);
    const int e00 = space.index(AtomLevel::e, 0, 0);
    const int g01 = space.index(AtomLevel::g, 0, 1);
    const int g10 = space.index(AtomLevel::g, 1, 0);
    const int g11 = space.index(AtomLevel::g, 1, 1);
    NamedElements out;
    out.rho11 = state(g00, g00).real();
    out.rho22 = state(e00, e00).real();
    out.rho33 = state(g01, g01).real();
    out.rho44 = state(g10, g10).real();
    out.rho55 = state(g11, g11).real();
    out.abs_rho14 = std::abs(state(g00, g10));
    out.abs_rho15 = std::abs(state(g00, g11));
    out.abs_rho25 = std::abs(state(e00, g11));
    return out;
}

ObservableRecord evaluate(const DensityMatrix& state, const HilbertSpace& space, double floor) {
    ObservableRecord r;
    r.mean_n = mean_number(state, FieldMode::cavity, space);
    r.mean_m = mean_number(state, FieldMode::mech, space);
    r.g2_n = g2_auto(state, FieldMode::cavity, space, floor);
    r.g2_m = g2_auto(state, FieldMode::mech, space, floor);
    r.g2_nm = g2_cross(state, space, floor);
    r.log_neg = log_negativity(partial_trace_atom(state, space), space);
    r.elements = named_elements(state, space);
    return r;
}

double max_relative_change(const ObservableRecord& a, const ObservableRecord& b,
                           double absolute_floor) {
    auto rel = [absolute_floor](double x, double y) {
        const double scale = std::max(std::abs(x), std::abs(y));
        if (scale < absolute_floor) return 0.0;
        return std::abs(x - y) / scale;
    };
    auto rel_opt = [&](const std::optional<double>& x, const std::optional<double>& y) {
        if (x.has_value() != y.has_value()) return std::numeric_limits<double>::infinity();
        return x ? rel(*x, *y) : 0.0;
    };
    return std::max({rel(a.mean_n, b.mean_n), rel(a.mean_m, b.mean_m), rel_opt(a.g2_n, b.g2_n),
                     rel_opt(a.g2_m, b.g2_m), rel_opt(a.g2_nm, b.g2_nm),
                     rel(a.log_neg, b.log_neg)});
}

}  // namespace tripart
