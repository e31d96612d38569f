#pragma once

#include "tripart/fock.hpp"

namespace tripart {

/// Physical parameters of the driven atom-photon-phonon model. Rates are in
/// units of the atomic damping kappa, so kappa = 1 in canonical configurations.
struct SystemParams {
    double delta = 0.0;        // detuning of atom and cavity in the rotating frame
    double j_coupling = 0.0;   // tripartite atom-photon-phonon strength
    double omega_drive = 0.0;  // coherent atomic drive
    double kappa = 1.0;        // atomic damping
    double gamma_c = 0.0;      // cavity damping
    double gamma_m = 0.0;      // mechanical damping
    double m_th = 0.0;         // mean thermal phonon number of the mechanical bath

    /// Throws ParameterError naming the offending field.
    void validate() const;

    /// Every rate and frequency multiplied by s; m_th is dimensionless and kept.
    SystemParams scaled(double s) const;

    /// Largest damping or pumping rate appearing in the dissipators.
    double max_rate() const;

    bool operator==(const SystemParams&) const = default;
};

/// Superoperator on column-stacked density matrices:
/// vec(A rho B) = (B^T (x) A) vec(rho), vec index = col * dim + row.
struct Liouvillian {
    Operator matrix;
    int state_dim = 0;  // dimension of rho; matrix is state_dim^2 square
};

/// H = D s+s- + D a+a + J (s+ a b + s- a+ b+) + W (s+ + s-).
/// The mechanical mode carries no frame term.
Operator build_hamiltonian(const SystemParams& params, const HilbertSpace& space);

/// rate * (o rho o+ - (o+o rho + rho o+o)/2) as a superoperator.
Liouvillian lindblad_dissipator(const Operator& op, double rate);

/// -i[H, .] + kappa D[s-] + gc D[a] + gm (mth + 1) D[b] + gm mth D[b+].
Liouvillian build_liouvillian(const SystemParams& params, const HilbertSpace& space);

/// Column stacking and its inverse.
Vector vectorize(const DenseMatrix& rho);
DenseMatrix unvectorize(const Vector& v, int dim);

/// Row vector vec(I)^dagger as a dense vector (entries 1 on diagonal slots).
Vector trace_functional(int dim);

}  // namespace tripart
