#pragma once

#include "tripart/fock.hpp"

namespace tripart {

/// Tolerances a density matrix must meet to be accepted as a physical state.
struct StateTolerance {
    double hermitian = 1e-10;
    double trace = 1e-10;
    double min_eigenvalue = -1e-8;
};

/// Hermitian, unit-trace, positive-semidefinite matrix on a space of fixed
/// dimension. Construction through `checked` enforces the invariants.
class DensityMatrix {
public:
    /// Validates and returns the state; throws ConsistencyError on violation.
    static DensityMatrix checked(DenseMatrix m, const StateTolerance& tol = {});

    /// Wraps without validation. For trusted inputs and integrator internals.
    static DensityMatrix unchecked(DenseMatrix m);

    /// Pure state |psi><psi| for a normalized vector.
    static DensityMatrix pure(const Vector& psi);

    /// |i><i| in the computational basis.
    static DensityMatrix basis(int dim, int index);

    int dim() const { return static_cast<int>(m_.rows()); }
    const DenseMatrix& matrix() const { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }

    cplx trace() const { return m_.trace(); }
    double min_eigenvalue() const;
    /// Largest |rho - rho^dagger| entry.
    double hermiticity_defect() const;

private:
    explicit DensityMatrix(DenseMatrix m) : m_(std::move(m)) {}
    DenseMatrix m_;
};

}  // namespace tripart
