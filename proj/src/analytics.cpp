#include "tripart/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tripart/errors.hpp"

namespace tripart {

WeakExcitationEstimate weak_excitation_estimate(const NamedElements& e, double gamma_c,
                                                double gamma_m, double threshold) {
    if (!(gamma_c > 0.0) || !(gamma_m > 0.0)) {
        throw ParameterError("weak_excitation_estimate: damping rates must be > 0");
    }
    WeakExcitationEstimate w;
    w.est_mean_n = e.rho55 + e.rho44;
    w.est_mean_m = e.rho55 + e.rho33;
    const double denom = w.est_mean_n * w.est_mean_m;
    if (denom > 0.0) w.est_g2_nm = e.rho55 / denom;
    if (w.est_mean_n > 0.0) w.equal_damping_g2_nm = 1.0 / (2.0 * w.est_mean_n);
    w.predicted_rho33 = gamma_c / gamma_m * e.rho55;
    w.predicted_rho44 = gamma_m / gamma_c * e.rho55;
    w.validity = w.est_g2_nm.has_value() && std::max(w.est_mean_n, w.est_mean_m) < threshold;
    return w;
}

SpectrumReport pair_subspace_spectrum(const SystemParams& params, const HilbertSpace& space) {
    if (params.omega_drive != 0.0) {
        throw ParameterError("pair_subspace_spectrum: omega_drive must be 0, got " +
                             std::to_string(params.omega_drive));
    }
    const Operator h = build_hamiltonian(params, space);
    const DenseMatrix hd(h);
    const int g11 = space.index(AtomLevel::g, 1, 1);
    const int e00 = space.index(AtomLevel::e, 0, 0);

    Eigen::Matrix2cd block;
    block << hd(g11, g11), hd(g11, e00), hd(e00, g11), hd(e00, e00);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);

    SpectrumReport r;
    r.pair_doublet = {es.eigenvalues()(0), es.eigenvalues()(1)};
    auto fix_phase = [](Eigen::Vector2cd v) {
        // Rotate so the |g,1,1> amplitude is real and non-negative.
        const double mag = std::abs(v(0));
        if (mag > 0.0) v *= std::conj(v(0)) / mag;
        else if (std::abs(v(1)) > 0.0) v *= std::conj(v(1)) / std::abs(v(1));
        return v;
    };
    r.lower_vector = fix_phase(es.eigenvectors().col(0));
    r.upper_vector = fix_phase(es.eigenvectors().col(1));
    r.single_photon_level = hd(space.index(AtomLevel::g, 1, 0), space.index(AtomLevel::g, 1, 0)).real();
    r.single_phonon_level = hd(space.index(AtomLevel::g, 0, 1), space.index(AtomLevel::g, 0, 1)).real();
    r.vacuum_level = hd(space.index(AtomLevel::g, 0, 0), space.index(AtomLevel::g, 0, 0)).real();
    return r;
}

namespace {

void require_increasing(std::span<const SweepSample> s) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!(s[i].x > s[i - 1].x)) throw SweepError("sweep grid must be strictly increasing");
    }
}

// Vertex of the parabola through three points.
double parabola_vertex(const SweepSample& a, const SweepSample& b, const SweepSample& c) {
    const double d1 = b.x - a.x;
    const double d2 = b.x - c.x;
    const double num = d1 * d1 * (b.value - c.value) - d2 * d2 * (b.value - a.value);
    const double den = d1 * (b.value - c.value) - d2 * (b.value - a.value);
    if (den == 0.0) return b.x;
    const double v = b.x - 0.5 * num / den;
    return std::clamp(v, a.x, c.x);
}

}  // namespace

double refined_argmax(std::span<const SweepSample> samples) {
    if (samples.empty()) throw SweepError("refined_argmax: no samples");
    require_increasing(samples);
    const auto it = std::max_element(samples.begin(), samples.end(),
                                     [](const SweepSample& a, const SweepSample& b) {
                                         return a.value < b.value;
                                     });
    const auto i = static_cast<std::size_t>(it - samples.begin());
    if (i == 0 || i + 1 == samples.size()) return samples[i].x;
    return parabola_vertex(samples[i - 1], samples[i], samples[i + 1]);
}

ResonancePair resonance_locator(std::span<const SweepSample> sweep) {
    require_increasing(sweep);
    const std::size_t n = sweep.size();
    if (n < 5) throw SweepError("resonance_locator: grid too coarse, need at least 5 points");
    const double scale = std::max(std::abs(sweep.front().x), std::abs(sweep.back().x));
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(sweep[i].x + sweep[n - 1 - i].x) > 1e-9 * scale) {
            throw SweepError("resonance_locator: grid is not symmetric about zero");
        }
    }

    // Non-negative half; an odd grid contains zero itself.
    const std::size_t mid = n / 2;
    std::vector<SweepSample> half(sweep.begin() + static_cast<std::ptrdiff_t>(mid), sweep.end());
    if (half.size() < 3) throw SweepError("resonance_locator: grid too coarse");

    double peak = 0.0;
    const auto it = std::max_element(half.begin(), half.end(),
                                     [](const SweepSample& a, const SweepSample& b) {
                                         return a.value < b.value;
                                     });
    const auto i = static_cast<std::size_t>(it - half.begin());
    if (i == 0) {
        // Maximum next to the origin: by mirror symmetry the vertex is at zero.
        peak = 0.0;
    } else if (i + 1 == half.size()) {
        peak = half[i].x;
    } else {
        peak = parabola_vertex(half[i - 1], half[i], half[i + 1]);
    }

    ResonancePair r{-peak, peak, false};
    if (n % 2 == 1) {
        const double centre = sweep[mid].value;
        r.central_dip = centre < sweep[mid - 1].value && centre < sweep[mid + 1].value;
    }
    return r;
}

}  // namespace tripart
