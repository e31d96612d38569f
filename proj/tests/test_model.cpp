#include <doctest.h>

#include <random>

#include "tripart/errors.hpp"
#include "tripart/model.hpp"

using namespace tripart;

namespace {

DenseMatrix random_hermitian(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    DenseMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = cplx(g(rng), g(rng));
    return (m + m.adjoint()) / 2.0;
}

// Direct matrix form of the master equation, independent of the superoperator.
DenseMatrix master_rhs(const SystemParams& p, const HilbertSpace& space, const DenseMatrix& rho) {
    const DenseMatrix h = DenseMatrix(build_hamiltonian(p, space));
    const DenseMatrix sm = DenseMatrix(embed(sigma_minus(), Slot::atom, space));
    const DenseMatrix a = DenseMatrix(embed(annihilation(space.cavity_levels()), Slot::cavity, space));
    const DenseMatrix b = DenseMatrix(embed(annihilation(space.mech_levels()), Slot::mech, space));
    auto diss = [&](const DenseMatrix& o) {
        const DenseMatrix od = o.adjoint();
        return DenseMatrix(o * rho * od - 0.5 * (od * o * rho + rho * od * o));
    };
    const cplx i(0.0, 1.0);
    return -i * (h * rho - rho * h) + p.kappa * diss(sm) + p.gamma_c * diss(a) +
           p.gamma_m * (p.m_th + 1.0) * diss(b) + p.gamma_m * p.m_th * diss(b.adjoint());
}

SystemParams sample_params() {
    SystemParams p;
    p.delta = 0.7;
    p.j_coupling = 1.3;
    p.omega_drive = 0.9;
    p.kappa = 1.0;
    p.gamma_c = 2.0;
    p.gamma_m = 0.5;
    p.m_th = 0.3;
    return p;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("Hamiltonian is Hermitian and has the expected matrix elements") {
    const SystemParams p = sample_params();
    const HilbertSpace space(3, 3);
    const Operator h = build_hamiltonian(p, space);
    CHECK(is_hermitian(h));
    const DenseMatrix hd(h);
    const int e00 = space.index(AtomLevel::e, 0, 0);
    const int g11 = space.index(AtomLevel::g, 1, 1);
    const int g00 = space.index(AtomLevel::g, 0, 0);
    const int e22 = space.index(AtomLevel::e, 2, 2);
    const int g33 = space.index(AtomLevel::g, 3, 3);
    CHECK(std::abs(hd(e00, g11) - p.j_coupling) < 1e-14);
    CHECK(std::abs(hd(e22, g33) - p.j_coupling * 3.0) < 1e-14);
    CHECK(std::abs(hd(e00, g00) - p.omega_drive) < 1e-14);
    CHECK(std::abs(hd(e00, e00) - p.delta) < 1e-14);
    CHECK(std::abs(hd(g11, g11) - p.delta) < 1e-14);
    // Phonon number carries no energy in this frame.
    CHECK(std::abs(hd(space.index(AtomLevel::g, 0, 3), space.index(AtomLevel::g, 0, 3))) < 1e-14);
}

TEST_CASE("parameter validation names the field") {
    SystemParams p = sample_params();
    p.gamma_m = -1.0;
    try {
        p.validate();
        FAIL("expected ParameterError");
    } catch (const ParameterError& e) {
        CHECK(std::string(e.what()).find("gamma_m") != std::string::npos);
    }
    p = sample_params();
    p.m_th = -0.1;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = sample_params();
    p.kappa = std::nan("");
    CHECK_THROWS_AS(p.validate(), ParameterError);
    CHECK_THROWS_AS(build_liouvillian(p, HilbertSpace(2, 2)), ParameterError);
}

TEST_CASE("vectorize is column stacking and inverts") {
    DenseMatrix m(2, 2);
    m << cplx(1), cplx(2), cplx(3), cplx(4);
    const Vector v = vectorize(m);
    CHECK(v(0) == cplx(1));
    CHECK(v(1) == cplx(3));
    CHECK(v(2) == cplx(2));
    CHECK(v(3) == cplx(4));
    CHECK(unvectorize(v, 2) == m);
    CHECK_THROWS_AS(unvectorize(v, 3), DimensionError);
}

TEST_CASE("dissipator of sigma_minus on an excited atom") {
    const Liouvillian d = lindblad_dissipator(sigma_minus(), 2.0);
    DenseMatrix rho = DenseMatrix::Zero(2, 2);
    rho(1, 1) = 1.0;
    const DenseMatrix out = unvectorize(d.matrix * vectorize(rho), 2);
    CHECK(std::abs(out(0, 0) - 2.0) < 1e-15);
    CHECK(std::abs(out(1, 1) + 2.0) < 1e-15);

    DenseMatrix coh = DenseMatrix::Zero(2, 2);
    coh(0, 1) = 1.0;
    const DenseMatrix dc = unvectorize(d.matrix * vectorize(coh), 2);
    CHECK(std::abs(dc(0, 1) + 1.0) < 1e-15);  // coherences decay at rate/2

    CHECK_THROWS_AS(lindblad_dissipator(sigma_minus(), -1.0), ParameterError);
    CHECK(lindblad_dissipator(sigma_minus(), 0.0).matrix.nonZeros() == 0);
}

TEST_CASE("dissipators preserve the trace") {
    const Operator a = annihilation(4);
    for (const Operator& op : {a, Operator(dagger(a)), sigma_minus()}) {
        const Liouvillian d = lindblad_dissipator(op, 1.7);
        const Vector t = trace_functional(d.state_dim);
        const Vector row = d.matrix.transpose() * t;
        CHECK(row.norm() < 1e-13);
    }
}

TEST_CASE("superoperator agrees with the direct master equation") {
    const SystemParams p = sample_params();
    const HilbertSpace space(2, 3);
    const Liouvillian l = build_liouvillian(p, space);
    CHECK(l.state_dim == space.total_dim());
    for (unsigned seed : {1u, 2u, 3u}) {
        const DenseMatrix rho = random_hermitian(space.total_dim(), seed);
        const DenseMatrix via_super = unvectorize(l.matrix * vectorize(rho), space.total_dim());
        const DenseMatrix direct = master_rhs(p, space, rho);
        CHECK((via_super - direct).norm() < 1e-12 * (1.0 + direct.norm()));
    }
}

TEST_CASE("Liouvillian maps Hermitian matrices to Hermitian, traceless ones") {
    const SystemParams p = sample_params();
    const HilbertSpace space(3, 2);
    const Liouvillian l = build_liouvillian(p, space);
    const DenseMatrix rho = random_hermitian(space.total_dim(), 11);
    const DenseMatrix out = unvectorize(l.matrix * vectorize(rho), space.total_dim());
    CHECK((out - out.adjoint()).norm() < 1e-12);
    CHECK(std::abs(out.trace()) < 1e-12);
}

TEST_CASE("scaled multiplies rates and energies but not the thermal occupation") {
    const SystemParams p = sample_params();
    const SystemParams s = p.scaled(3.0);
    CHECK(s.delta == doctest::Approx(3 * p.delta));
    CHECK(s.gamma_m == doctest::Approx(3 * p.gamma_m));
    CHECK(s.omega_drive == doctest::Approx(3 * p.omega_drive));
    CHECK(s.m_th == p.m_th);
}

}  // TEST_SUITE
