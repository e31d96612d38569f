#include <doctest.h>

#include <cmath>
#include <vector>

#include "tripart/analytics.hpp"
#include "tripart/errors.hpp"

using namespace tripart;

namespace {

std::vector<SweepSample> sample(const std::vector<double>& xs, double (*f)(double)) {
    std::vector<SweepSample> out;
    for (double x : xs) out.push_back({x, f(x)});
    return out;
}

std::vector<double> symmetric_grid(double half_width, int n) {
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(-half_width + 2.0 * half_width * i / (n - 1));
    return xs;
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("weak-excitation estimate from equal one-quantum populations") {
    // rho33 = rho44 = rho55 = p: <n> = <m> = 2p and g2_nm = p / (2p)^2 = 1/(4p).
    NamedElements e;
    const double p = 1e-3;
    e.rho33 = e.rho44 = e.rho55 = p;
    e.rho11 = 1.0 - 3 * p;
    const WeakExcitationEstimate w = weak_excitation_estimate(e, 10.0, 10.0);
    CHECK(w.est_mean_n == doctest::Approx(2 * p));
    CHECK(w.est_mean_m == doctest::Approx(2 * p));
    CHECK(*w.est_g2_nm == doctest::Approx(1.0 / (4 * p)));
    CHECK(*w.equal_damping_g2_nm == doctest::Approx(1.0 / (4 * p)));
    CHECK(w.predicted_rho33 == doctest::Approx(p));
    CHECK(w.predicted_rho44 == doctest::Approx(p));
    CHECK(w.validity);
}

TEST_CASE("weak-excitation estimate damping ratios and validity") {
    NamedElements e;
    e.rho55 = 2e-3;
    e.rho33 = 0.05;
    e.rho44 = 1e-4;
    const WeakExcitationEstimate w = weak_excitation_estimate(e, 10.0, 0.5);
    CHECK(w.predicted_rho33 == doctest::Approx(20.0 * 2e-3));
    CHECK(w.predicted_rho44 == doctest::Approx(0.05 * 2e-3));
    CHECK(*w.equal_damping_g2_nm == doctest::Approx(1.0 / (2.0 * 2.1e-3)));
    CHECK_FALSE(w.validity);  // est_mean_m = 0.052 is above 0.01
    CHECK_THROWS_AS(weak_excitation_estimate(e, 0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(weak_excitation_estimate(e, 1.0, -1.0), ParameterError);

    const WeakExcitationEstimate empty = weak_excitation_estimate(NamedElements{}, 1.0, 1.0);
    CHECK_FALSE(empty.est_g2_nm.has_value());
    CHECK_FALSE(empty.validity);
}

TEST_CASE("pair subspace spectrum is delta +- J with symmetric eigenvectors") {
    SystemParams p;
    p.delta = 0.3;
    p.j_coupling = 1.7;
    p.omega_drive = 0.0;
    const SpectrumReport r = pair_subspace_spectrum(p, HilbertSpace(3, 3));
    CHECK(r.pair_doublet.first == doctest::Approx(0.3 - 1.7));
    CHECK(r.pair_doublet.second == doctest::Approx(0.3 + 1.7));
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(r.lower_vector(0) - h) < 1e-14);
    CHECK(std::abs(r.lower_vector(1) + h) < 1e-14);
    CHECK(std::abs(r.upper_vector(0) - h) < 1e-14);
    CHECK(std::abs(r.upper_vector(1) - h) < 1e-14);
    CHECK(r.single_photon_level == doctest::Approx(0.3));
    CHECK(r.single_phonon_level == 0.0);
    CHECK(r.vacuum_level == 0.0);

    p.omega_drive = 1.0;
    CHECK_THROWS_AS(pair_subspace_spectrum(p, HilbertSpace(3, 3)), ParameterError);
}

TEST_CASE("refined_argmax recovers a parabola vertex exactly") {
    const auto s = sample({-1.0, 0.0, 1.0, 2.0}, [](double x) { return -(x - 0.3) * (x - 0.3); });
    CHECK(refined_argmax(s) == doctest::Approx(0.3).epsilon(1e-12));
    const auto edge = sample({0.0, 1.0, 2.0}, [](double x) { return x; });
    CHECK(refined_argmax(edge) == 2.0);
    const auto bad = sample({0.0, 0.0, 1.0}, [](double x) { return x; });
    CHECK_THROWS_AS(refined_argmax(bad), SweepError);
}

TEST_CASE("resonance_locator finds a symmetric pair with a central dip") {
    const auto f = [](double x) { return std::exp(-(std::abs(x) - 5.0) * (std::abs(x) - 5.0)); };
    const auto s = sample(symmetric_grid(10.0, 201), f);
    const ResonancePair r = resonance_locator(s);
    CHECK(r.right == doctest::Approx(5.0).epsilon(1e-3));
    CHECK(r.left == -r.right);
    CHECK(r.central_dip);
}

TEST_CASE("resonance_locator on a single central peak") {
    const auto s = sample(symmetric_grid(3.0, 31), [](double x) { return 1.0 / (1.0 + x * x); });
    const ResonancePair r = resonance_locator(s);
    CHECK(r.right == 0.0);
    CHECK(r.left == 0.0);
    CHECK_FALSE(r.central_dip);
}

TEST_CASE("resonance_locator rejects unusable grids") {
    const auto flat = [](double) { return 1.0; };
    CHECK_THROWS_AS(resonance_locator(sample({-1, 0, 1}, flat)), SweepError);
    CHECK_THROWS_AS(resonance_locator(sample({-2, -1, 0, 1, 3}, flat)), SweepError);
    CHECK_THROWS_AS(resonance_locator(sample({-2, -1, 0, 0, 2}, flat)), SweepError);
}

}  // TEST_SUITE
