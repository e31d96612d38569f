#include "tripart/fock.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tripart/errors.hpp"

namespace tripart {

HilbertSpace::HilbertSpace(int cavity_levels, int mech_levels)
    : cavity_levels_(cavity_levels), mech_levels_(mech_levels) {
    if (cavity_levels < 1 || mech_levels < 1) {
        throw DimensionError("truncation levels must be >= 1, got (" + std::to_string(cavity_levels) +
                             ", " + std::to_string(mech_levels) + ")");
    }
}

int HilbertSpace::slot_dim(Slot slot) const {
    switch (slot) {
        case Slot::atom: return atom_dim();
        case Slot::cavity: return cavity_dim();
        case Slot::mech: return mech_dim();
    }
    return 0;
}

int HilbertSpace::index(AtomLevel s, int n, int m) const {
    if (n < 0 || n > cavity_levels_ || m < 0 || m > mech_levels_) {
        throw DimensionError("basis label (" + std::to_string(n) + ", " + std::to_string(m) +
                             ") outside truncated space");
    }
    return static_cast<int>(s) * field_dim() + n * mech_dim() + m;
}

Operator annihilation(int levels) {
    if (levels < 1) {
        throw DimensionError("annihilation: levels must be >= 1, got " + std::to_string(levels));
    }
    Operator a(levels + 1, levels + 1);
    std::vector<Eigen::Triplet<cplx, std::ptrdiff_t>> t;
    t.reserve(levels);
    for (int k = 1; k <= levels; ++k) {
        t.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
    }
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

Operator sigma_minus() {
    Operator s(2, 2);
    s.insert(static_cast<int>(AtomLevel::g), static_cast<int>(AtomLevel::e)) = 1.0;
    s.makeCompressed();
    return s;
}

Operator identity(int dim) {
    Operator id(dim, dim);
    id.setIdentity();
    return id;
}

Operator dagger(const Operator& op) {
    return Operator(op.adjoint());
}

Operator kron(const Operator& a, const Operator& b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<cplx, std::ptrdiff_t>> t;
    t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (std::ptrdiff_t ca = 0; ca < a.outerSize(); ++ca) {
        for (Operator::InnerIterator ia(a, ca); ia; ++ia) {
            for (std::ptrdiff_t cb = 0; cb < b.outerSize(); ++cb) {
                for (Operator::InnerIterator ib(b, cb); ib; ++ib) {
                    t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                   ia.value() * ib.value());
                }
            }
        }
    }
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

Operator embed(const Operator& op, Slot slot, const HilbertSpace& space) {
    const int d = space.slot_dim(slot);
    if (op.rows() != d || op.cols() != d) {
        throw DimensionError("embed: operator is " + std::to_string(op.rows()) + "x" +
                             std::to_string(op.cols()) + ", slot dimension is " + std::to_string(d));
    }
    switch (slot) {
        case Slot::atom: return kron(op, identity(space.field_dim()));
        case Slot::cavity:
            return kron(identity(2), kron(op, identity(space.mech_dim())));
        case Slot::mech: return kron(identity(2 * space.cavity_dim()), op);
    }
    return {};
}

Operator commutator(const Operator& x, const Operator& y) {
    return Operator(x * y - y * x);
}

double max_abs(const Operator& op) {
    double m = 0.0;
    for (std::ptrdiff_t c = 0; c < op.outerSize(); ++c) {
        for (Operator::InnerIterator it(op, c); it; ++it) m = std::max(m, std::abs(it.value()));
    }
    return m;
}

bool is_hermitian(const Operator& op, double tol) {
    if (op.rows() != op.cols()) return false;
    return max_abs(Operator(op - dagger(op))) <= tol;
}

}  // namespace tripart
