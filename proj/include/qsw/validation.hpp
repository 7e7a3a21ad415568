#pragma once

// Self-check routines behind the `validate-paper` and `oracle-check`
// commands: closed-form reference blocks for the monitored Bell pair, the
// matrix reproduction gate, and the analytic-vs-brute-force comparison.

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "qsw/collisions.hpp"
#include "qsw/experiments.hpp"
#include "qsw/matrix.hpp"
#include "qsw/quantum.hpp"
#include "qsw/switch.hpp"

namespace qsw {

// Closed-form conditional blocks of the Bell pair under the z/x monitoring
// switch, as functions of the monitoring strength.
namespace bell_blocks {

inline ComplexMatrix a_pp(double e) {
    const double mid = -0.5 * (e - 2.0) * e;
    const double corner = (e - 2.0) * (e - 1.0);
    ComplexMatrix m(4, 4);
    m(0, 0) = 2.0 - e;
    m(0, 3) = corner;
    m(1, 1) = mid;
    m(1, 2) = mid;
    m(2, 1) = mid;
    m(2, 2) = mid;
    m(3, 0) = corner;
    m(3, 3) = 2.0 - e;
    return m * 0.25;
}

inline ComplexMatrix a_mm(double e) {
    ComplexMatrix m(4, 4);
    m(1, 1) = e * e;
    m(1, 2) = -e * e;
    m(2, 1) = -e * e;
    m(2, 2) = e * e;
    return m * 0.125;
}

inline ComplexMatrix sum(double e) { return a_pp(e) + a_mm(e); }
inline ComplexMatrix difference(double e) { return a_pp(e) - a_mm(e); }

} // namespace bell_blocks

// Largest deviation of the switch-built blocks from the closed forms when the
// Bell pair is monitored in the two given bases. Zero (to round-off) for the
// z/x MUB pair; sizeable for any non-unbiased replacement.
inline double monitored_bell_block_error(double epsilon, const ProjectorSet& first,
                                         const ProjectorSet& second) {
    const std::vector<std::size_t> dims{2, 2};
    const KrausChannel m = monitoring_channel(first, epsilon, 0, dims);
    const KrausChannel n = monitoring_channel(second, epsilon, 0, dims);
    const SwitchOutput out = run_switch(m, n, bell_pair());
    double err = max_abs_diff(out.a_pp.mat(), bell_blocks::a_pp(epsilon));
    err = std::max(err, max_abs_diff(out.a_mm.mat(), bell_blocks::a_mm(epsilon)));
    err = std::max(err, max_abs_diff(out.a_def.mat(), bell_blocks::sum(epsilon)));
    err = std::max(err, max_abs_diff(out.a_indef.mat(), bell_blocks::difference(epsilon)));
    return err;
}

// Worst trace distance between n-fold iterated collisions and the closed-form
// state, over the given scenario grid.
inline double oracle_worst_distance(const std::vector<double>& epsilons,
                                    const std::vector<double>& g_taus,
                                    const std::vector<double>& betas, int max_n) {
    double worst = 0.0;
    for (double eps : epsilons) {
        const SwitchOutput sw = bell_mub_switch(eps);
        for (double g_tau : g_taus) {
            for (double beta : betas) {
                const CollisionParams p(g_tau, 1.0, 1.0, beta, pair_hamiltonian(1.0));
                DensityMatrix brute = sw.joint;
                for (int n = 1; n <= max_n; ++n) {
                    brute = collide_once(brute, p);
                    worst = std::max(worst, trace_distance(brute, analytic_after_n(sw, n, p)));
                }
            }
        }
    }
    return worst;
}

namespace detail {

inline bool report_line(std::ostream& out, const std::string& name, double value,
                        double bound) {
    const bool ok = value <= bound;
    out << (ok ? "pass  " : "FAIL  ") << std::left << std::setw(52) << name
        << std::scientific << std::setprecision(3) << value << " (bound " << bound << ")\n"
        << std::defaultfloat;
    return ok;
}

} // namespace detail

// Pass/fail table over the reproduction checks: block matrices at several
// strengths, the post-selection probability formulas, the singlet
// conditional, and the collision oracle at g*tau = 0.2. True iff all pass.
inline bool run_paper_validation(std::ostream& out) {
    bool ok = true;

    const auto bases = mub_qubit_bases();
    double block_err = 0.0;
    for (double e : {0.0, 0.25, 0.5, 1.0})
        block_err = std::max(block_err,
                             monitored_bell_block_error(e, bases.first, bases.second));
    ok &= detail::report_line(out, "block matrices at eps in {0,0.25,0.5,1}", block_err,
                              1.0e-12);

    double prob_err = 0.0;
    double singlet_err = 0.0;
    const DensityMatrix singlet = DensityMatrix(bell_blocks::a_mm(1.0) * 4.0, {2, 2});
    for (double e : {0.25, 0.5, 1.0}) {
        const SwitchOutput sw = bell_mub_switch(e);
        const PostSelection plus = postselect(sw, ControlOutcome::plus);
        const PostSelection minus = postselect(sw, ControlOutcome::minus);
        prob_err = std::max(prob_err, std::abs(plus.probability - (1.0 - e * e / 4.0)));
        prob_err = std::max(prob_err, std::abs(minus.probability - e * e / 4.0));
        singlet_err = std::max(singlet_err, trace_distance(*minus.conditional, singlet));
    }
    ok &= detail::report_line(out, "post-selection probabilities 1 -+ eps^2/4", prob_err,
                              1.0e-12);
    ok &= detail::report_line(out, "minus conditional equals the singlet", singlet_err,
                              1.0e-12);

    const double oracle = oracle_worst_distance({0.3, 0.8}, {0.2}, {0.0, 1.0, beta_infinity()},
                                                10);
    ok &= detail::report_line(out, "collision oracle, g*tau=0.2, n<=10", oracle, 1.0e-9);

    out << (ok ? "validation passed" : "validation FAILED") << "\n";
    return ok;
}

// Analytic-vs-brute-force census over the full parameter grid; prints the
// worst trace distance and compares against 1e-9.
inline bool run_oracle_check(std::ostream& out, int max_n) {
    const std::vector<double> g_taus{0.05, 0.2, 0.5};
    const std::vector<double> betas{0.0, 1.0, 5.0, beta_infinity()};
    double worst = 0.0;
    for (double eps : {0.3, 0.7}) {
        const SwitchOutput sw = bell_mub_switch(eps);
        for (double g_tau : g_taus)
            for (double beta : betas) {
                const CollisionParams p(g_tau, 1.0, 1.0, beta, pair_hamiltonian(1.0));
                DensityMatrix brute = sw.joint;
                double local = 0.0;
                for (int n = 1; n <= max_n; ++n) {
                    brute = collide_once(brute, p);
                    local = std::max(local, trace_distance(brute, analytic_after_n(sw, n, p)));
                }
                out << "eps=" << eps << " g_tau=" << g_tau << " beta=" << format_beta(beta)
                    << " max_td=" << std::scientific << std::setprecision(3) << local
                    << std::defaultfloat << "\n";
                worst = std::max(worst, local);
            }
    }
    const bool ok = worst <= 1.0e-9;
    out << (ok ? "oracle check passed" : "oracle check FAILED") << " (worst "
        << std::scientific << std::setprecision(3) << worst << std::defaultfloat
        << ", bound 1e-09, n<=" << max_n << ")\n";
    return ok;
}

} // namespace qsw
