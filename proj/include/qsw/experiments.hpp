#pragma once

// Reproduction engine: Bell pair through the two-MUB monitoring switch, open
// control via the collision model, concurrence sweeps over
// (epsilon, n, beta, post-selection) with the definite-order baseline.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsw/collisions.hpp"
#include "qsw/concurrence.hpp"
#include "qsw/errors.hpp"
#include "qsw/matrix.hpp"
#include "qsw/quantum.hpp"
#include "qsw/switch.hpp"

namespace qsw {

enum class Engine { analytic, bruteforce, both };

inline const char* to_string(Engine e) {
    switch (e) {
        case Engine::analytic: return "analytic";
        case Engine::bruteforce: return "bruteforce";
        default: return "both";
    }
}

struct EpsilonGrid {
    double min = 0.0;
    double max = 1.0;
    int steps = 201;
};

struct ScenarioConfig {
    EpsilonGrid epsilon;
    std::vector<int> collision_counts{0, 1, 2, 3, 5, 10, 20, 50};
    std::vector<double> betas{0.1, 5.0};
    double g_tau = 0.2;
    double omega = 1.0;
    double omega_s = 1.0;
    std::vector<ControlOutcome> postselections{ControlOutcome::plus, ControlOutcome::minus};
    bool include_definite_baseline = true;
    Engine engine = Engine::analytic;

    void validate() const {
        if (epsilon.steps < 2)
            throw ConfigError("epsilon.steps: must be >= 2");
        if (!(epsilon.min >= 0.0 && epsilon.max <= 1.0))
            throw ConfigError("epsilon: grid must lie within [0, 1]");
        if (!(epsilon.min < epsilon.max))
            throw ConfigError("epsilon: min must be below max");
        for (int n : collision_counts)
            if (n < 0) throw ConfigError("collisions: counts must be >= 0");
        if (collision_counts.empty())
            throw ConfigError("collisions: at least one count required");
        for (double b : betas)
            if (b < 0.0 || std::isnan(b)) throw ConfigError("betas: entries must be >= 0 or inf");
        if (betas.empty())
            throw ConfigError("betas: at least one entry required");
        if (!(g_tau > 0.0 && g_tau < 1.5707963267948966))
            throw ConfigError("g_tau: must lie in (0, pi/2)");
        if (!(omega > 0.0))
            throw ConfigError("omega: must be positive");
        if (!(omega_s >= 0.0))
            throw ConfigError("omega_s: must be >= 0");
    }
};

// One sweep result row. Concurrence is absent (not zero) when the selected
// outcome has vanishing probability.
struct SweepRecord {
    double epsilon;
    int n;
    double beta;
    std::string postselect; // "plus", "minus" or "definite"
    double p_post;
    std::optional<double> concurrence;
    std::string engine;
};

inline std::vector<double> epsilon_grid_points(const EpsilonGrid& grid) {
    std::vector<double> eps(static_cast<std::size_t>(grid.steps));
    for (int i = 0; i < grid.steps; ++i)
        eps[static_cast<std::size_t>(i)] =
            grid.min + (grid.max - grid.min) * static_cast<double>(i) / (grid.steps - 1);
    return eps;
}

inline DensityMatrix bell_pair() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix phi(4, 1);
    phi(0, 0) = s;
    phi(3, 0) = s;
    return DensityMatrix::from_ket(phi, {2, 2});
}

// Free pair Hamiltonian omega_s (sigma_z x 1 + 1 x sigma_z); local, so it
// cannot change concurrence.
inline ComplexMatrix pair_hamiltonian(double omega_s) {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    return (kron(pauli_z(), i2) + kron(i2, pauli_z())) * omega_s;
}

// Collision parameters for reproduction runs; the (g, tau) split is fixed by
// convention at tau = 1, which leaves every post-selected concurrence
// unchanged (only the g*tau product and the modulus-one coherence phase
// depend on it).
inline CollisionParams reproduction_params(double g_tau, double omega, double omega_s,
                                           double beta) {
    return CollisionParams(g_tau, 1.0, omega, beta, pair_hamiltonian(omega_s));
}

// Switch of the sigma_z and sigma_x monitorings (both of strength epsilon,
// both on qubit A) applied to the Bell pair (|00> + |11>)/sqrt(2).
inline SwitchOutput bell_mub_switch(double epsilon) {
    const auto bases = mub_qubit_bases();
    const std::vector<std::size_t> dims{2, 2};
    KrausChannel m = monitoring_channel(bases.first, epsilon, 0, dims);
    KrausChannel n = monitoring_channel(bases.second, epsilon, 0, dims);
    return run_switch(m, n, bell_pair());
}

namespace detail {

inline DensityMatrix normalized_state(const ComplexMatrix& mat,
                                      const std::vector<std::size_t>& dims) {
    return DensityMatrix(mat * (1.0 / mat.trace().real()), dims);
}

inline SweepRecord definite_record(const SwitchOutput& sw, double epsilon, int n,
                                   const CollisionParams& params) {
    const ComplexMatrix u_n = unitary_from_hamiltonian(params.h_s, params.tau * n);
    const DensityMatrix state = normalized_state(conjugate_by(u_n, sw.a_def.mat()), {2, 2});
    return SweepRecord{epsilon, n,     0.0, "definite", 1.0,
                       concurrence_mixed(state).value, "analytic"};
}

inline SweepRecord open_record(const SwitchOutput& sw, double epsilon, int n, double beta,
                               ControlOutcome outcome, const CollisionParams& base,
                               Engine engine) {
    if (engine == Engine::both)
        throw ValidationError("open_record: engine must be analytic or bruteforce");
    const CollisionParams params(base.g, base.tau, base.omega, beta, base.h_s);

    DensityMatrix state = sw.joint;
    if (engine == Engine::analytic) {
        state = analytic_after_n(sw, n, params);
    } else {
        for (int k = 0; k < n; ++k) state = collide_once(state, params);
    }
    const PostSelection ps = postselect_after_n(state, outcome);

    SweepRecord rec{epsilon, n, beta, to_string(outcome), ps.probability, std::nullopt,
                    to_string(engine)};
    if (ps.conditional)
        rec.concurrence = concurrence_mixed(*ps.conditional).value;
    return rec;
}

} // namespace detail

// Concurrence of the monitoring maps applied in definite causal order: the
// normalized, freely evolved A_def mixture. Independent of n (local frame).
inline SweepRecord definite_baseline(double epsilon, int n, const CollisionParams& params) {
    return detail::definite_record(bell_mub_switch(epsilon), epsilon, n, params);
}

// One open-control grid point: switch, n collisions (closed form or
// per-collision simulation), post-selection, concurrence.
inline SweepRecord open_control_record(double epsilon, int n, double beta,
                                       ControlOutcome outcome, const CollisionParams& params,
                                       Engine engine) {
    return detail::open_record(bell_mub_switch(epsilon), epsilon, n, beta, outcome, params,
                               engine);
}

// Full Cartesian sweep in deterministic order: epsilon outermost (with the
// definite baseline row first inside each epsilon group), then collision
// count, beta, outcome; with engine = both the analytic row precedes the
// brute-force row.
inline std::vector<SweepRecord> run_sweep(const ScenarioConfig& cfg) {
    cfg.validate();
    const CollisionParams base = reproduction_params(cfg.g_tau, cfg.omega, cfg.omega_s, 0.0);
    std::vector<Engine> engines;
    if (cfg.engine == Engine::both)
        engines = {Engine::analytic, Engine::bruteforce};
    else
        engines = {cfg.engine};

    std::vector<SweepRecord> records;
    for (double eps : epsilon_grid_points(cfg.epsilon)) {
        const SwitchOutput sw = bell_mub_switch(eps);
        if (cfg.include_definite_baseline)
            records.push_back(detail::definite_record(sw, eps, 0, base));
        for (int n : cfg.collision_counts)
            for (double beta : cfg.betas)
                for (ControlOutcome outcome : cfg.postselections)
                    for (Engine engine : engines)
                        records.push_back(
                            detail::open_record(sw, eps, n, beta, outcome, base, engine));
    }
    return records;
}

// Largest |concurrence difference| between adjacent analytic/bruteforce rows
// of the same grid point; +inf if one engine has a defined concurrence and
// the other does not.
inline double max_engine_delta(const std::vector<SweepRecord>& records) {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        const SweepRecord& a = records[i];
        const SweepRecord& b = records[i + 1];
        if (a.engine == b.engine || a.epsilon != b.epsilon || a.n != b.n ||
            a.postselect != b.postselect)
            continue;
        if (!(a.beta == b.beta || (std::isinf(a.beta) && std::isinf(b.beta))))
            continue;
        if (a.concurrence.has_value() != b.concurrence.has_value())
            return std::numeric_limits<double>::infinity();
        if (a.concurrence)
            worst = std::max(worst, std::abs(*a.concurrence - *b.concurrence));
    }
    return worst;
}

// Entanglement sudden-death threshold of a concurrence curve: the bracketing
// grid interval [last positive, first zero] refined by bisection to 1e-6.
struct SuddenDeath {
    double last_positive;
    double first_zero;
    double refined;
};

inline std::optional<SuddenDeath> sudden_death_threshold(
    const std::function<double(double)>& concurrence_of_eps, double lo, double hi,
    int coarse_steps) {
    constexpr double kZero = 1.0e-12;
    double prev_eps = lo;
    double prev_c = concurrence_of_eps(lo);
    for (int i = 1; i < coarse_steps; ++i) {
        const double eps = lo + (hi - lo) * static_cast<double>(i) / (coarse_steps - 1);
        const double c = concurrence_of_eps(eps);
        if (prev_c > kZero && c <= kZero) {
            double a = prev_eps;
            double b = eps;
            while (b - a > 1.0e-6) {
                const double mid = 0.5 * (a + b);
                if (concurrence_of_eps(mid) <= kZero)
                    b = mid;
                else
                    a = mid;
            }
            return SuddenDeath{prev_eps, eps, 0.5 * (a + b)};
        }
        prev_eps = eps;
        prev_c = c;
    }
    return std::nullopt;
}

} // namespace qsw
