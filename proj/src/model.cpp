#include "tripart/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tripart/errors.hpp"

namespace tripart {

namespace {

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) throw ParameterError(std::string(field) + ": " + what);
}

}  // namespace

void SystemParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    require(finite(delta), "delta", "must be finite");
    require(finite(j_coupling) && j_coupling >= 0.0, "j_coupling", "must be finite and >= 0");
    require(finite(omega_drive) && omega_drive >= 0.0, "omega_drive", "must be finite and >= 0");
    require(finite(kappa) && kappa > 0.0, "kappa", "must be finite and > 0");
    require(finite(gamma_c) && gamma_c >= 0.0, "gamma_c", "must be finite and >= 0");
    require(finite(gamma_m) && gamma_m >= 0.0, "gamma_m", "must be finite and >= 0");
    require(finite(m_th) && m_th >= 0.0, "m_th", "must be finite and >= 0");
}

SystemParams SystemParams::scaled(double s) const {
    SystemParams p = *this;
    p.delta *= s;
    p.j_coupling *= s;
    p.omega_drive *= s;
    p.kappa *= s;
    p.gamma_c *= s;
    p.gamma_m *= s;
    return p;
}

double SystemParams::max_rate() const {
    return std::max({kappa, gamma_c, gamma_m * (m_th + 1.0)});
}

Operator build_hamiltonian(const SystemParams& params, const HilbertSpace& space) {
    const Operator sm = embed(sigma_minus(), Slot::atom, space);
    const Operator a = embed(annihilation(space.cavity_levels()), Slot::cavity, space);
    const Operator b = embed(annihilation(space.mech_levels()), Slot::mech, space);
    const Operator sp = dagger(sm);
    const Operator ad = dagger(a);
    const Operator bd = dagger(b);

    const Operator pair_up = sp * a * b;
    const Operator pair_down = sm * ad * bd;
    Operator h = params.delta * Operator(sp * sm) + params.delta * Operator(ad * a) +
                 params.j_coupling * Operator(pair_up + pair_down) +
                 params.omega_drive * Operator(sp + sm);
    h.prune(cplx(0.0));
    h.makeCompressed();
    return h;
}

Liouvillian lindblad_dissipator(const Operator& op, double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw ParameterError("lindblad_dissipator: rate must be finite and >= 0, got " +
                             std::to_string(rate));
    }
    if (op.rows() != op.cols()) throw DimensionError("lindblad_dissipator: operator not square");
    const auto dim = static_cast<int>(op.rows());
    Liouvillian out;
    out.state_dim = dim;
    out.matrix.resize(static_cast<std::ptrdiff_t>(dim) * dim, static_cast<std::ptrdiff_t>(dim) * dim);
    if (rate == 0.0) return out;

    const Operator id = identity(dim);
    const Operator od = dagger(op);
    const Operator n = od * op;
    const Operator jump = kron(Operator(op.conjugate()), op);
    const Operator anti = kron(id, n) + kron(Operator(n.transpose()), id);
    out.matrix = rate * (jump - 0.5 * anti);
    out.matrix.prune(cplx(0.0));
    out.matrix.makeCompressed();
    return out;
}

Liouvillian build_liouvillian(const SystemParams& params, const HilbertSpace& space) {
    params.validate();
    const int dim = space.total_dim();
    const Operator h = build_hamiltonian(params, space);
    const Operator id = identity(dim);
    const Operator sm = embed(sigma_minus(), Slot::atom, space);
    const Operator a = embed(annihilation(space.cavity_levels()), Slot::cavity, space);
    const Operator b = embed(annihilation(space.mech_levels()), Slot::mech, space);

    Liouvillian out;
    out.state_dim = dim;
    out.matrix = cplx(0.0, -1.0) * (kron(id, h) - kron(Operator(h.transpose()), id));
    out.matrix += lindblad_dissipator(sm, params.kappa).matrix;
    out.matrix += lindblad_dissipator(a, params.gamma_c).matrix;
    out.matrix += lindblad_dissipator(b, params.gamma_m * (params.m_th + 1.0)).matrix;
    out.matrix += lindblad_dissipator(dagger(b), params.gamma_m * params.m_th).matrix;
    out.matrix.prune(cplx(0.0));
    out.matrix.makeCompressed();
    return out;
}

Vector vectorize(const DenseMatrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

DenseMatrix unvectorize(const Vector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw DimensionError("unvectorize: length " + std::to_string(v.size()) +
                             " is not " + std::to_string(dim) + "^2");
    }
    return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

Vector trace_functional(int dim) {
    Vector t = Vector::Zero(static_cast<Eigen::Index>(dim) * dim);
    for (int i = 0; i < dim; ++i) t(static_cast<Eigen::Index>(i) * dim + i) = 1.0;
    return t;
}

}  // namespace tripart
