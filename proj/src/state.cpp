#include "tripart/state.hpp"

#include <cmath>
#include <sstream>

#include "tripart/errors.hpp"

namespace tripart {

DensityMatrix DensityMatrix::checked(DenseMatrix m, const StateTolerance& tol) {
    if (m.rows() != m.cols()) throw DimensionError("density matrix must be square");
    DensityMatrix d(std::move(m));
    const double herm = d.hermiticity_defect();
    const double tr_err = std::abs(d.trace() - 1.0);
    if (herm > tol.hermitian || tr_err > tol.trace) {
        std::ostringstream os;
        os << "density matrix invariant violated: hermiticity defect " << herm << ", trace error "
           << tr_err;
        throw ConsistencyError(os.str());
    }
    const double lmin = d.min_eigenvalue();
    if (lmin < tol.min_eigenvalue) {
        std::ostringstream os;
        os << "density matrix not positive semidefinite: min eigenvalue " << lmin;
        throw ConsistencyError(os.str());
    }
    return d;
}

DensityMatrix DensityMatrix::unchecked(DenseMatrix m) {
    if (m.rows() != m.cols()) throw DimensionError("density matrix must be square");
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
    return checked(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::basis(int dim, int index) {
    if (index < 0 || index >= dim) throw DimensionError("basis index out of range");
    DenseMatrix m = DenseMatrix::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
    const DenseMatrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_defect() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace tripart
