#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "tripart/errors.hpp"
#include "tripart/steady_state.hpp"

using namespace tripart;

namespace {

SystemParams params(double delta, double j, double omega, double gc, double gm, double mth) {
    SystemParams p;
    p.delta = delta;
    p.j_coupling = j;
    p.omega_drive = omega;
    p.kappa = 1.0;
    p.gamma_c = gc;
    p.gamma_m = gm;
    p.m_th = mth;
    return p;
}

double population(const DensityMatrix& rho, const HilbertSpace& s, AtomLevel a, int n, int m) {
    const int i = s.index(a, n, m);
    return rho(i, i).real();
}

}  // namespace

TEST_SUITE("steady_state") {

TEST_CASE("undriven zero-temperature system relaxes to the vacuum") {
    const auto [rho, report] = solve_steady(params(0.3, 2.0, 0.0, 10, 10, 0), Truncation{4, 4});
    const HilbertSpace s(4, 4);
    CHECK(population(rho, s, AtomLevel::g, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.residual_norm < 1e-10);
    CHECK(report.levels_used == Truncation{4, 4});
}

TEST_CASE("decoupled phonon reaches the truncated thermal distribution") {
    // With J = 0 and no drive the phonon ladder satisfies detailed balance,
    // so p(m+1)/p(m) = m_th/(m_th+1) holds exactly even when truncated.
    const double mth = 0.4;
    const int levels = 8;
    const auto [rho, report] = solve_steady(params(0, 0, 0, 10, 3, mth), Truncation{2, levels});
    const HilbertSpace s(2, levels);
    const double r = mth / (mth + 1.0);
    double norm = 0.0;
    for (int m = 0; m <= levels; ++m) norm += std::pow(r, m);
    for (int m = 0; m <= levels; ++m) {
        CHECK(population(rho, s, AtomLevel::g, 0, m) ==
              doctest::Approx(std::pow(r, m) / norm).epsilon(1e-10));
    }
}

TEST_CASE("driven two-level atom matches the optical Bloch solution") {
    // rho_ee = Omega^2 / (delta^2 + kappa^2/4 + 2 Omega^2)
    for (double delta : {0.0, 0.5, -1.5}) {
        const auto [rho, report] = solve_steady(params(delta, 0.0, 1.0, 10, 10, 0), Truncation{2, 2});
        const HilbertSpace s(2, 2);
        const double want = 1.0 / (delta * delta + 0.25 + 2.0);
        CHECK(population(rho, s, AtomLevel::e, 0, 0) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("sparse solve agrees with the dense null vector") {
    const SystemParams p = params(0.4, 0.8, 1.0, 2.0, 0.7, 0.05);
    const HilbertSpace s(2, 2);
    const Liouvillian l = build_liouvillian(p, s);
    const DenseMatrix ld(l.matrix);
    Eigen::JacobiSVD<DenseMatrix> svd(ld, Eigen::ComputeFullV);
    const Vector v = svd.matrixV().col(ld.cols() - 1);
    DenseMatrix oracle = unvectorize(v, s.total_dim());
    oracle /= oracle.trace();
    const auto [rho, report] = solve_steady(l, s);
    CHECK((rho.matrix() - oracle).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("steady state is a valid density matrix with a small residual") {
    const auto [rho, report] = solve_steady(params(1, 1, 1, 10, 10, 0), Truncation{4, 4});
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK(rho.hermiticity_defect() < 1e-12);
    CHECK(rho.min_eigenvalue() > -1e-10);
    CHECK(report.residual_norm < 1e-10);
}

TEST_CASE("conserved phonon number gives NonUniqueSteadyStateError") {
    // J = 0 and gamma_m = 0: every phonon number sector has its own steady state.
    CHECK_THROWS_AS(solve_steady(params(0, 0, 1, 10, 0, 0), Truncation{2, 2}),
                    NonUniqueSteadyStateError);
}

TEST_CASE("time evolution converges to the solved steady state") {
    const SystemParams p = params(0.5, 1.0, 1.0, 3.0, 2.0, 0.0);
    const HilbertSpace s(2, 2);
    const Liouvillian l = build_liouvillian(p, s);
    const auto [rho, report] = solve_steady(l, s);
    const EvolveResult ev =
        evolve_to_steady(l, DensityMatrix::basis(s.total_dim(), 0), 1e4, stable_evolve_step(l));
    CHECK(ev.derivative_norm < 1e-10);
    CHECK(ev.max_trace_drift < 1e-9);
    CHECK((ev.state.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("evolution input validation and non-convergence") {
    const Liouvillian l = build_liouvillian(params(0, 1, 1, 10, 10, 0), HilbertSpace(2, 2));
    const DensityMatrix start = DensityMatrix::basis(l.state_dim, 0);
    CHECK_THROWS_AS(evolve_to_steady(l, start, 1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(evolve_to_steady(l, start, -1.0, 1e-3), ParameterError);
    CHECK_THROWS_AS(evolve_to_steady(l, start, 0.01, 1e-3), ConvergenceError);
    CHECK_THROWS_AS(evolve_to_steady(l, DensityMatrix::basis(4, 0), 1.0, 1e-3), DimensionError);
}

TEST_CASE("default step respects both the rate scale and RK4 stability") {
    const SystemParams p = params(100, 100, 1, 10, 10, 0);
    const Liouvillian l = build_liouvillian(p, HilbertSpace(3, 3));
    const double h = default_evolve_step(p, l);
    CHECK(h <= 1e-3 / p.max_rate());
    CHECK(h <= stable_evolve_step(l));
    CHECK(h > 0.0);
}

TEST_CASE("truncation check") {
    SUBCASE("undriven vacuum is converged") {
        const SolveReport r = check_truncation(params(0, 1, 0, 10, 10, 0), Truncation{3, 3});
        CHECK(r.truncation_checked);
        CHECK(r.truncation_converged);
        CHECK(r.truncation_change < 1e-6);
    }
    SUBCASE("strong drive on a small truncation is flagged") {
        const SolveReport r = check_truncation(params(0, 1, 100, 10, 10, 0), Truncation{3, 3});
        CHECK(r.truncation_checked);
        CHECK_FALSE(r.truncation_converged);
        CHECK(r.truncation_change > 1e-6);
    }
    CHECK_THROWS_AS(check_truncation(params(0, 1, 1, 10, 10, 0), Truncation{1, 3}), DimensionError);
}

}  // TEST_SUITE
