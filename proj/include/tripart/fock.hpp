#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace tripart {

using cplx = std::complex<double>;
using Operator = Eigen::SparseMatrix<cplx, Eigen::ColMajor, std::ptrdiff_t>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Slot { atom, cavity, mech };

enum class AtomLevel : int { g = 0, e = 1 };

/// Composite space: two-level atom (x) cavity Fock 0..cavity_levels (x)
/// mechanics Fock 0..mech_levels.
///
/// Basis ordering is frozen: index = s*(Nc+1)*(Nm+1) + n*(Nm+1) + m, atom
/// slowest, phonon fastest. Partial trace over the atom is therefore a sum of
/// two contiguous diagonal blocks.
class HilbertSpace {
public:
    HilbertSpace(int cavity_levels, int mech_levels);

    static constexpr int atom_dim() { return 2; }
    int cavity_levels() const { return cavity_levels_; }
    int mech_levels() const { return mech_levels_; }
    int cavity_dim() const { return cavity_levels_ + 1; }
    int mech_dim() const { return mech_levels_ + 1; }
    /// Dimension of the photon (x) phonon factor.
    int field_dim() const { return cavity_dim() * mech_dim(); }
    int total_dim() const { return atom_dim() * field_dim(); }

    int slot_dim(Slot slot) const;

    int index(AtomLevel s, int n, int m) const;

    bool operator==(const HilbertSpace&) const = default;

private:
    int cavity_levels_;
    int mech_levels_;
};

/// Truncated ladder operator on Fock states 0..levels: entry sqrt(k) at (k-1, k).
Operator annihilation(int levels);

/// Atomic lowering operator |g><e| with g = 0, e = 1.
Operator sigma_minus();

Operator identity(int dim);

/// Kronecker product, `a` on the slow index.
Operator kron(const Operator& a, const Operator& b);

/// Conjugate transpose.
Operator dagger(const Operator& op);

/// I (x) op (x) I placed on `slot` following the HilbertSpace ordering.
Operator embed(const Operator& op, Slot slot, const HilbertSpace& space);

Operator commutator(const Operator& x, const Operator& y);

bool is_hermitian(const Operator& op, double tol = 1e-14);

/// Largest absolute entry; zero for an empty matrix.
double max_abs(const Operator& op);

}  // namespace tripart
