#include "tripart/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>
#include <sstream>

#include "tripart/analytics.hpp"
#include "tripart/errors.hpp"
#include "tripart/observables.hpp"
#include "tripart/steady_state.hpp"

namespace tripart::acceptance {

namespace {

SystemParams make(double delta, double j, double omega, double gc, double gm, double mth) {
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

std::vector<double> logspace(double lo_exp, double hi_exp, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        v[i] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (count - 1));
    }
    return v;
}

ObservableRecord observe(const SystemParams& p, Truncation t = {5, 5}) {
    const auto [rho, report] = solve_steady(p, t);
    return evaluate(rho, t.space());
}

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << "FAILED: " << what << "; ";
        }
    }
};

// ---------------------------------------------------------------------------

Outcome spectral_check() {
    Outcome o;
    const HilbertSpace space(5, 5);
    const double s = 1.0 / std::sqrt(2.0);
    double worst_val = 0.0;
    double worst_vec = 0.0;
    for (auto [delta, j] : {std::pair{0.0, 0.1}, {0.0, 100.0}, {5.0, 2.0}}) {
        const SpectrumReport r = pair_subspace_spectrum(make(delta, j, 0.0, 10, 10, 0), space);
        worst_val = std::max({worst_val, std::abs(r.pair_doublet.first - (delta - j)),
                              std::abs(r.pair_doublet.second - (delta + j))});
        // Basis order {|g,1,1>, |e,0,0>}.
        const Eigen::Vector2cd minus(s, -s);
        const Eigen::Vector2cd plus(s, s);
        worst_vec = std::max({worst_vec, (r.lower_vector - minus).cwiseAbs().maxCoeff(),
                              (r.upper_vector - plus).cwiseAbs().maxCoeff()});
    }
    o.require(worst_val <= 1e-10, "pair eigenvalues differ from delta +- J");
    o.require(worst_vec <= 1e-12, "dressed vectors differ from (|g,1,1> +- |e,0,0>)/sqrt2");
    o.detail << "max eigenvalue error " << worst_val << ", max vector error " << worst_vec;
    return o;
}

Outcome exact_limits() {
    Outcome o;
    {
        const HilbertSpace space(5, 5);
        const auto [rho, rep] = solve_steady(make(0.3, 0.1, 0.0, 10, 10, 0), {5, 5});
        const DenseMatrix vac = DensityMatrix::basis(space.total_dim(), 0).matrix();
        const double dev = (rho.matrix() - vac).cwiseAbs().maxCoeff();
        const ObservableRecord r = evaluate(rho, space);
        o.require(dev <= 1e-12, "Omega = 0 steady state is not the vacuum");
        o.require(r.mean_n <= 1e-12 && r.mean_m <= 1e-12 && r.log_neg <= 1e-12,
                  "vacuum observables not zero");
        o.require(!r.g2_n && !r.g2_m && !r.g2_nm, "vacuum g2 not reported undefined");
        o.detail << "(a) vacuum deviation " << dev << "; ";
    }
    {
        const Truncation t{2, 24};
        const auto [rho, rep] = solve_steady(make(0.0, 0.0, 0.0, 10, 10, 0.5), t);
        const double m = mean_number(rho, FieldMode::mech, t.space());
        const auto g2 = g2_auto(rho, FieldMode::mech, t.space());
        o.require(std::abs(m - 0.5) <= 1e-6, "thermal <m> != 0.5");
        o.require(g2 && std::abs(*g2 - 2.0) <= 1e-6, "thermal g2_m != 2");
        o.detail << "(b) <m> = " << m << ", g2_m = " << (g2 ? *g2 : -1.0) << "; ";
    }
    {
        const SystemParams p = make(0.0, 0.0, 1.0, 10, 10, 0);
        const Truncation t{2, 2};
        const HilbertSpace space = t.space();
        const Liouvillian l = build_liouvillian(p, space);
        const DenseMatrix oracle = dense_null_space_state(l);
        const int e00 = space.index(AtomLevel::e, 0, 0);
        const double oracle_ee = oracle(e00, e00).real();
        const auto [rho, rep] = solve_steady(l, space);
        const double solver_ee = rho(e00, e00).real();
        o.require(std::abs(oracle_ee - 4.0 / 9.0) <= 1e-8, "dense oracle rho_ee != 4/9");
        o.require(std::abs(solver_ee - oracle_ee) <= 1e-8, "solver rho_ee differs from dense oracle");
        o.require(std::abs(solver_ee - 4.0 / 9.0) <= 1e-8, "solver rho_ee != 4/9");
        o.detail << "(c) oracle rho_ee - 4/9 = " << oracle_ee - 4.0 / 9.0 << ", solver - oracle = "
                 << solver_ee - oracle_ee;
    }
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const Truncation t{3, 3};
    const HilbertSpace space = t.space();
    double worst = 0.0;
    for (const CanonicalPoint& cp : canonical_points()) {
        const Liouvillian l = build_liouvillian(cp.params, space);
        const auto [rho, rep] = solve_steady(l, space);
        const DensityMatrix start = DensityMatrix::basis(space.total_dim(), 0);
        const EvolveResult ev = evolve_to_steady(l, start, 1e4, stable_evolve_step(l));
        const double diff = (ev.state.matrix() - rho.matrix()).cwiseAbs().maxCoeff();
        worst = std::max(worst, diff);
        o.require(diff <= 1e-6, cp.label + " solver and time evolution disagree");
        o.detail << cp.label << " " << diff << " (t=" << ev.time << "); ";
    }
    o.detail << "max elementwise difference " << worst;
    return o;
}

Outcome blockade_with_bunching() {
    Outcome o;
    const std::vector<std::pair<std::string, SystemParams>> points{
        {"J=0.1 delta=0", make(0.0, 0.1, 1, 10, 10, 0)},
        {"J=100 delta=+J", make(100.0, 100.0, 1, 10, 10, 0)},
        {"J=100 delta=-J", make(-100.0, 100.0, 1, 10, 10, 0)},
    };
    for (const auto& [label, p] : points) {
        const ObservableRecord r = observe(p);
        const bool defined = r.g2_n && r.g2_m && r.g2_nm;
        o.require(defined, label + " correlations undefined");
        if (!defined) continue;
        o.require(*r.g2_n < 1.0 && *r.g2_m < 1.0, label + " no antibunching");
        o.require(*r.g2_nm > 10.0, label + " g2_nm <= 10");
        o.require(std::abs(*r.g2_n - *r.g2_m) <= 1e-8, label + " g2_n != g2_m");
        o.detail << label << ": g2_n " << *r.g2_n << " g2_m " << *r.g2_m << " g2_nm " << *r.g2_nm
                 << "; ";
    }
    return o;
}

Outcome eq15_closure() {
    Outcome o;
    int checked = 0;
    double worst = 0.0;
    for (double j : logspace(-2.0, 2.0, 33)) {
        const ObservableRecord r = observe(make(j, j, 1, 10, 10, 0));
        if (std::max(r.mean_n, r.mean_m) >= 0.01 || !r.g2_nm) continue;
        const double gap = std::abs(*r.g2_nm * 2.0 * r.mean_n - 1.0);
        worst = std::max(worst, gap);
        ++checked;
        if (gap >= 0.1) o.require(false, "closure gap " + std::to_string(gap) + " at J=" + std::to_string(j));
    }
    o.require(checked > 0, "no weak-excitation points in the sweep");
    o.detail << checked << " weak-excitation points, max |2<n> g2_nm - 1| = " << worst;
    return o;
}

Outcome damping_ratios() {
    Outcome o;
    const double gc = 10.0;
    for (double j : {0.1, 100.0}) {
        int checked = 0;
        int outside = 0;
        double lo = 1e300;
        double hi = -1e300;
        double first_bad = 0.0;
        double last_bad = 0.0;
        for (double gm : logspace(-2.0, 2.0, 41)) {
            const ObservableRecord r = observe(make(j, j, 1, gc, gm, 0));
            if (std::max(r.mean_n, r.mean_m) >= 0.01) continue;
            const NamedElements& e = r.elements;
            const double q13 = e.rho33 * gm / (e.rho55 * gc);
            const double q14 = e.rho44 * gc / (e.rho55 * gm);
            lo = std::min({lo, q13, q14});
            hi = std::max({hi, q13, q14});
            ++checked;
            if (q13 < 0.85 || q13 > 1.15 || q14 < 0.85 || q14 > 1.15) {
                if (outside == 0) first_bad = gm;
                last_bad = gm;
                ++outside;
            }
        }
        const ObservableRecord eq = observe(make(j, j, 1, gc, gc, 0));
        const double a = eq.elements.rho33;
        const double b = eq.elements.rho44;
        const double c = eq.elements.rho55;
        const double spread = std::max({a, b, c}) / std::min({a, b, c}) - 1.0;

        std::ostringstream tag;
        tag << "J=" << j;
        o.require(checked > 0, tag.str() + " no weak-excitation points");
        if (outside > 0) {
            std::ostringstream msg;
            msg << tag.str() << " " << outside << "/" << checked
                << " weak-excitation points outside [0.85, 1.15] for gamma_m in [" << first_bad
                << ", " << last_bad << "]";
            o.require(false, msg.str());
        }
        o.require(spread <= 0.15, tag.str() + " rho33, rho44, rho55 not equal at gamma_m = gamma_c");
        o.detail << tag.str() << ": ratios in [" << lo << ", " << hi << "] over " << checked
                 << " points, spread at gamma_m = gamma_c " << spread << "; ";
    }
    return o;
}

Outcome strong_coupling_population() {
    Outcome o;
    const ObservableRecord r = observe(make(100.0, 100.0, 1, 10, 0.01, 0));
    o.require(std::abs(r.elements.rho33 - 0.875) <= 0.03, "rho33 outside 0.875 +- 0.03");
    o.detail << "rho33 = " << r.elements.rho33;
    return o;
}

Outcome entanglement_structure() {
    Outcome o;
    // (a) product states and random states.
    std::mt19937_64 rng(20191);
    std::normal_distribution<double> normal;
    auto random_state = [&](int d) {
        DenseMatrix g(d, d);
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) g(r, c) = cplx(normal(rng), normal(rng));
        }
        DenseMatrix rho = g * g.adjoint();
        return DenseMatrix(rho / rho.trace());
    };
    const HilbertSpace space(3, 3);
    double worst_product = 0.0;
    double min_en = 1e300;
    for (int trial = 0; trial < 20; ++trial) {
        const DenseMatrix field =
            Eigen::kroneckerProduct(random_state(space.cavity_dim()), random_state(space.mech_dim())).eval();
        const ReducedState red{field, space.cavity_dim(), space.mech_dim()};
        worst_product = std::max(worst_product, log_negativity(red, space));
        const ReducedState any{random_state(space.field_dim()), space.cavity_dim(), space.mech_dim()};
        min_en = std::min(min_en, log_negativity(any, space));
    }
    o.require(worst_product <= 1e-10, "product state with nonzero E_N");
    o.require(min_en >= 0.0, "negative E_N");
    o.detail << "(a) max product-state E_N " << worst_product << "; ";

    // (b) two peaks at +-J for J = 100.
    {
        std::vector<SweepSample> sweep;
        const double cell = 1.0;
        for (int i = -150; i <= 150; ++i) {
            const double d = i * cell;
            const ObservableRecord r = observe(make(d, 100.0, 1, 10, 10, 0));
            min_en = std::min(min_en, r.log_neg);
            sweep.push_back({d, r.log_neg});
        }
        const ResonancePair peaks = resonance_locator(sweep);
        o.require(std::abs(peaks.right - 100.0) <= cell && std::abs(peaks.left + 100.0) <= cell,
                  "E_N peaks not at delta = +-J");
        o.detail << "(b) peaks at " << peaks.left << ", " << peaks.right << "; ";
    }

    // (c) optimal mechanical damping.
    for (auto [j, target] : {std::pair{0.1, 1.32}, {100.0, 3.47}}) {
        std::vector<SweepSample> sweep;
        for (double gm : logspace(-2.0, 2.0, 81)) {
            const ObservableRecord r = observe(make(j, j, 1, 10, gm, 0));
            min_en = std::min(min_en, r.log_neg);
            sweep.push_back({std::log10(gm), r.log_neg});
        }
        const double peak = std::pow(10.0, refined_argmax(sweep));
        const bool interior = peak > 0.011 && peak < 99.0;
        o.require(interior, "E_N maximum not interior for J=" + std::to_string(j));
        o.require(std::abs(peak / target - 1.0) <= 0.2,
                  "E_N optimum off target for J=" + std::to_string(j));
        o.detail << "(c) J=" << j << " optimum gamma_m " << peak << " (target " << target << "); ";
    }
    o.require(min_en >= 0.0, "negative E_N in sweeps");
    return o;
}

Outcome thermal_robustness() {
    Outcome o;
    const Truncation t{5, 10};
    double half_point[2] = {0.0, 0.0};
    int k = 0;
    for (double j : {0.1, 100.0}) {
        const double en0 = observe(make(j, j, 1, 10, 10, 0.0), t).log_neg;
        std::vector<double> mth = logspace(-3.0, 0.0, 31);
        std::vector<double> en;
        for (double m : mth) en.push_back(observe(make(j, j, 1, 10, 10, m), t).log_neg);
        bool monotone = en.front() <= en0 + 1e-12;
        for (std::size_t i = 1; i < en.size(); ++i) monotone = monotone && en[i] <= en[i - 1] + 1e-12;
        o.require(monotone, "E_N increases with m_th for J=" + std::to_string(j));
        // First crossing of E_N(0)/2, interpolated in log m_th.
        double cross = std::nan("");
        double prev_m = 0.0;
        double prev_e = en0;
        for (std::size_t i = 0; i < en.size(); ++i) {
            if (en[i] <= 0.5 * en0) {
                if (i == 0) {
                    cross = mth[0];
                } else {
                    const double f = (prev_e - 0.5 * en0) / (prev_e - en[i]);
                    cross = std::pow(10.0, std::log10(prev_m) + f * (std::log10(mth[i]) - std::log10(prev_m)));
                }
                break;
            }
            prev_m = mth[i];
            prev_e = en[i];
        }
        o.require(!std::isnan(cross), "E_N never halves for J=" + std::to_string(j));
        half_point[k++] = cross;
        o.detail << "J=" << j << " E_N(0) " << en0 << ", half at m_th " << cross << "; ";
    }
    o.require(half_point[1] > half_point[0], "strong coupling not more robust");
    return o;
}

Outcome structural_suite() {
    Outcome o;
    const Truncation t{5, 5};
    const HilbertSpace space = t.space();
    double worst_trace = 0.0;
    double worst_parity = 0.0;
    double worst_exchange = 0.0;
    double worst_scale = 0.0;
    double worst_trunc = 0.0;
    for (const CanonicalPoint& cp : canonical_points()) {
        const SystemParams& p = cp.params;
        const Liouvillian l = build_liouvillian(p, space);
        const Vector left = l.matrix.adjoint() * trace_functional(space.total_dim());
        worst_trace = std::max(worst_trace, left.cwiseAbs().maxCoeff());

        // solve_steady validates Hermiticity, trace and PSD of its output.
        const auto [rho, rep] = solve_steady(l, space);
        const ObservableRecord r = evaluate(rho, space);

        SystemParams flipped = p;
        flipped.delta = -p.delta;
        const ObservableRecord rf = observe(flipped, t);
        auto diff = [](const ObservableRecord& a, const ObservableRecord& b) {
            double d = std::max({std::abs(a.mean_n - b.mean_n), std::abs(a.mean_m - b.mean_m),
                                 std::abs(a.log_neg - b.log_neg)});
            if (a.g2_n && b.g2_n) d = std::max(d, std::abs(*a.g2_n - *b.g2_n) / std::abs(*a.g2_n));
            if (a.g2_nm && b.g2_nm) d = std::max(d, std::abs(*a.g2_nm - *b.g2_nm) / std::abs(*a.g2_nm));
            const auto ea = a.elements.values();
            const auto eb = b.elements.values();
            for (std::size_t i = 0; i < ea.size(); ++i) d = std::max(d, std::abs(ea[i] - eb[i]));
            return d;
        };
        worst_parity = std::max(worst_parity, diff(r, rf));

        if (p.gamma_c == p.gamma_m && p.m_th == 0.0) {
            worst_exchange = std::max({worst_exchange, std::abs(r.mean_n - r.mean_m),
                                       std::abs(*r.g2_n - *r.g2_m)});
        }

        const double s = 3.7;
        const Liouvillian ls = build_liouvillian(p.scaled(s), space);
        const double lscale = max_abs(Operator(ls.matrix - s * l.matrix)) / max_abs(ls.matrix);
        const auto [rho_s, rep_s] = solve_steady(ls, space);
        worst_scale = std::max({worst_scale, lscale,
                                (rho_s.matrix() - rho.matrix()).cwiseAbs().maxCoeff()});

        const SolveReport tr = check_truncation(p, t);
        worst_trunc = std::max(worst_trunc, tr.truncation_change);
        o.require(tr.truncation_converged, cp.label + " truncation not converged (5,5)->(10,10)");
    }
    o.require(worst_trace <= 1e-12, "trace functional is not a left null vector");
    o.require(worst_parity <= 1e-8, "observables not even in delta");
    o.require(worst_exchange <= 1e-8, "photon/phonon exchange symmetry broken");
    o.require(worst_scale <= 1e-10, "scale covariance broken");
    o.detail << "trace " << worst_trace << ", parity " << worst_parity << ", exchange "
             << worst_exchange << ", scale " << worst_scale << ", truncation " << worst_trunc;
    return o;
}

struct Spec {
    int id;
    const char* title;
    double budget;
    Outcome (*run)();
};

}  // namespace

std::vector<CanonicalPoint> canonical_points() {
    return {
        {"weak-resonant", make(0.1, 0.1, 1, 10, 10, 0)},
        {"strong-resonant", make(100, 100, 1, 10, 10, 0)},
        {"mid-coupling", make(1, 1, 1, 10, 10, 0)},
        {"weak-entangling", make(0.1, 0.1, 1, 10, 1.32, 0)},
        {"strong-entangling", make(100, 100, 1, 10, 3.47, 0)},
        {"strong-thermal", make(100, 100, 1, 10, 10, 0.001)},
    };
}

DenseMatrix dense_null_space_state(const Liouvillian& liouvillian) {
    const DenseMatrix l(liouvillian.matrix);
    Eigen::JacobiSVD<DenseMatrix> svd(l, Eigen::ComputeFullV);
    const Vector v = svd.matrixV().col(l.cols() - 1);
    DenseMatrix rho = unvectorize(v, liouvillian.state_dim);
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result) {
    static const Spec specs[] = {
        {1, "spectral check of the pair doublet", 1.0, spectral_check},
        {2, "exact-limit fixed points", 5.0, exact_limits},
        {3, "steady solver vs time-evolution oracle", 120.0, oracle_equivalence},
        {4, "blockade with photon-phonon bunching", 30.0, blockade_with_bunching},
        {5, "equal-damping cross-correlation closure", 120.0, eq15_closure},
        {6, "damping-ratio population relations", 120.0, damping_ratios},
        {7, "strong-coupling single-phonon population", 10.0, strong_coupling_population},
        {8, "entanglement structure", 180.0, entanglement_structure},
        {9, "thermal robustness trend", 120.0, thermal_robustness},
        {10, "structural invariant suite", 180.0, structural_suite},
    };
    std::vector<CriterionResult> out;
    for (const Spec& s : specs) {
        CriterionResult r;
        r.id = s.id;
        r.title = s.title;
        r.budget_seconds = s.budget;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome o = s.run();
            r.passed = o.passed;
            r.detail = o.detail.str();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.budget_seconds) {
            r.passed = false;
            r.detail += " runtime over budget";
        }
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %2d %-44s %7.2fs / %.0fs  ", r.passed ? "PASS" : "FAIL", r.id,
                  r.title.c_str(), r.seconds, r.budget_seconds);
    return head + r.detail;
}

}  // namespace tripart::acceptance
