#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "tripart/fock.hpp"
#include "tripart/state.hpp"

namespace tripart {

/// Occupation below which g2 ratios are reported as undefined instead of 0/0.
inline constexpr double kDefaultOccupationFloor = 1e-12;

/// Populations and coherences of the five-state weak-excitation manifold,
/// labelled 1 = (g,0,0), 2 = (e,0,0), 3 = (g,0,1), 4 = (g,1,0), 5 = (g,1,1).
struct NamedElements {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double rho33 = 0.0;
    double rho44 = 0.0;
    double rho55 = 0.0;
    double abs_rho14 = 0.0;
    double abs_rho15 = 0.0;
    double abs_rho25 = 0.0;

    static constexpr std::array<std::string_view, 8> labels{
        "rho11", "rho22", "rho33", "rho44", "rho55", "abs_rho14", "abs_rho15", "abs_rho25"};
    std::array<double, 8> values() const {
        return {rho11, rho22, rho33, rho44, rho55, abs_rho14, abs_rho15, abs_rho25};
    }
    static NamedElements from_values(const std::array<double, 8>& v);
};

struct ObservableRecord {
    double mean_n = 0.0;
    double mean_m = 0.0;
    std::optional<double> g2_n;
    std::optional<double> g2_m;
    std::optional<double> g2_nm;
    double log_neg = 0.0;
    NamedElements elements;
};

/// Photon (x) phonon state left after tracing out the atom.
struct ReducedState {
    DenseMatrix matrix;
    int cavity_dim = 0;
    int mech_dim = 0;
};

enum class FieldMode { cavity, mech };

double mean_number(const DensityMatrix& state, FieldMode mode, const HilbertSpace& space);

/// <o+o+oo>/<o+o>^2, or nullopt when <o+o> is below `floor`.
std::optional<double> g2_auto(const DensityMatrix& state, FieldMode mode, const HilbertSpace& space,
                              double floor = kDefaultOccupationFloor);

/// <a+b+ba>/(<n><m>), or nullopt when either occupation is below `floor`.
std::optional<double> g2_cross(const DensityMatrix& state, const HilbertSpace& space,
                               double floor = kDefaultOccupationFloor);

/// Sum of the two atom-diagonal blocks.
ReducedState partial_trace_atom(const DensityMatrix& state, const HilbertSpace& space);

/// Transpose of the indices belonging to `mode` only.
DenseMatrix partial_transpose(const ReducedState& reduced, FieldMode mode);

/// log2 of the trace norm of the partial transpose over `mode` (photon by
/// default). Throws ConsistencyError if the transpose is non-Hermitian beyond 1e-8.
double log_negativity(const ReducedState& reduced, const HilbertSpace& space,
                      FieldMode transposed = FieldMode::cavity);

NamedElements named_elements(const DensityMatrix& state, const HilbertSpace& space);

/// Every observable at once.
ObservableRecord evaluate(const DensityMatrix& state, const HilbertSpace& space,
                          double floor = kDefaultOccupationFloor);

/// Largest relative difference over <n>, <m>, the three g2 values and E_N.
/// Pairs with both magnitudes below `absolute_floor` count as equal; a g2 that
/// is defined in one record and undefined in the other gives infinity.
double max_relative_change(const ObservableRecord& a, const ObservableRecord& b,
                           double absolute_floor = 1e-12);

}  // namespace tripart
