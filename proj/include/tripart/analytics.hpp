#pragma once

#include <optional>
#include <span>
#include <utility>

#include "tripart/fock.hpp"
#include "tripart/model.hpp"
#include "tripart/observables.hpp"

namespace tripart {

/// Five-state (single-pair manifold) estimates of the occupations and the
/// photon-phonon cross-correlation from steady-state populations.
struct WeakExcitationEstimate {
    double est_mean_n = 0.0;              // rho55 + rho44
    double est_mean_m = 0.0;              // rho55 + rho33
    std::optional<double> est_g2_nm;      // rho55 / ((rho55 + rho33)(rho55 + rho44))
    std::optional<double> equal_damping_g2_nm;  // 1 / (2 est_mean_n)
    double predicted_rho33 = 0.0;         // (gamma_c / gamma_m) rho55
    double predicted_rho44 = 0.0;         // (gamma_m / gamma_c) rho55
    bool validity = false;                // max(est_mean_n, est_mean_m) < threshold
};

inline constexpr double kWeakExcitationThreshold = 0.01;

WeakExcitationEstimate weak_excitation_estimate(const NamedElements& elements, double gamma_c,
                                                double gamma_m,
                                                double threshold = kWeakExcitationThreshold);

/// Undriven spectrum in the rotating frame. The pair block spans
/// {|g,1,1>, |e,0,0>}; eigenvectors are stored in that order, sign fixed so
/// the |g,1,1> component is non-negative.
struct SpectrumReport {
    std::pair<double, double> pair_doublet;  // ascending
    Eigen::Vector2cd lower_vector;
    Eigen::Vector2cd upper_vector;
    double single_photon_level = 0.0;  // <g,1,0|H|g,1,0>
    double single_phonon_level = 0.0;  // <g,0,1|H|g,0,1>
    double vacuum_level = 0.0;
};

/// Throws ParameterError unless omega_drive == 0.
SpectrumReport pair_subspace_spectrum(const SystemParams& params, const HilbertSpace& space);

struct SweepSample {
    double x = 0.0;
    double value = 0.0;
};

/// Maximum of sampled data with a three-point parabolic refinement. Samples
/// must be strictly increasing in x. At an end point no refinement is done.
/// Pass log10 coordinates for log-spaced grids.
double refined_argmax(std::span<const SweepSample> samples);

struct ResonancePair {
    double left = 0.0;
    double right = 0.0;
    /// True when the value at delta = 0 is a local minimum of the curve.
    bool central_dip = false;
};

/// Locates the symmetric pair of maxima of an even function of the detuning.
/// The grid must be strictly increasing and mirror-symmetric about zero with at
/// least three points on the non-negative side. Only the non-negative half is
/// searched, so the result is exactly (-d, +d).
ResonancePair resonance_locator(std::span<const SweepSample> sweep);

}  // namespace tripart
