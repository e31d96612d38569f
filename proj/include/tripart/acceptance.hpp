#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tripart/model.hpp"
#include "tripart/state.hpp"

namespace tripart::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

/// One named parameter point.
struct CanonicalPoint {
    std::string label;
    SystemParams params;
};

/// Six points spanning weak and strong coupling, the entanglement optima and a
/// weakly thermal bath.
std::vector<CanonicalPoint> canonical_points();

/// Steady state from the smallest right singular vector of the dense
/// Liouvillian. Independent of the sparse trace-replacement solver; only
/// practical for small truncations.
DenseMatrix dense_null_space_state(const Liouvillian& liouvillian);

std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 ..." style line.
std::string format_line(const CriterionResult& r);

}  // namespace tripart::acceptance
