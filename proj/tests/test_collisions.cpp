#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "qsw/collisions.hpp"
#include "qsw/experiments.hpp"
#include "support.hpp"

using namespace qsw;

namespace {

CollisionParams params_for(double g_tau, double beta, ComplexMatrix h_s) {
    return CollisionParams(g_tau, 1.0, 1.0, beta, std::move(h_s));
}

SwitchOutput random_switch(std::mt19937& rng) {
    const KrausChannel m_ch = test::random_channel(rng, 2, 2);
    const KrausChannel n_ch = test::random_channel(rng, 2, 3);
    return run_switch(m_ch, n_ch, test::random_density(rng, {2}));
}

} // namespace

TEST_CASE("interaction hamiltonian printed forms agree") {
    const double g = 0.7;
    const ComplexMatrix v = interaction_hamiltonian(g);
    // g (|+><-| x |-><+| + h.c.)
    const ComplexMatrix hop = kron(plus_ket() * minus_ket().adjoint(),
                                   minus_ket() * plus_ket().adjoint());
    const ComplexMatrix expect = (hop + hop.adjoint()) * g;
    CHECK(max_abs_diff(v, expect) <= 1e-14);
    CHECK(v.is_hermitian(1e-14));
}

TEST_CASE("interaction conserves the bare energy") {
    const double omega = 1.0;
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix h_ce =
        kron(control_hamiltonian(omega), i2) + kron(i2, control_hamiltonian(omega));
    const ComplexMatrix v = interaction_hamiltonian(0.2);
    CHECK(max_abs_diff(h_ce * v, v * h_ce) <= 1e-13);
}

TEST_CASE("collision params validation") {
    const ComplexMatrix h = pauli_z();
    CHECK_NOTHROW(params_for(0.2, 1.0, h));
    CHECK_THROWS_AS(params_for(1.6, 1.0, h), ValidationError);
    CHECK_THROWS_AS(CollisionParams(0.2, 1.0, -1.0, 0.0, h), ValidationError);
    CHECK_THROWS_AS(CollisionParams(0.2, 1.0, 1.0, -0.5, h), ValidationError);
}

TEST_CASE("collide_once limiting cases") {
    std::mt19937 rng(51);
    const SwitchOutput sw = random_switch(rng);

    // g = 0: free evolution only.
    const CollisionParams free_p(0.0, 1.0, 1.0, 1.0, pauli_z());
    const DensityMatrix evolved = collide_once(sw.joint, free_p);
    const ComplexMatrix u_free =
        kron(unitary_from_hamiltonian(pauli_z(), 1.0),
             unitary_from_hamiltonian(control_hamiltonian(1.0), 1.0));
    CHECK(max_abs_diff(evolved.mat(), conjugate_by(u_free, sw.joint.mat())) <= 1e-12);

    // tau = 0: nothing happens.
    const CollisionParams frozen(0.2, 0.0, 1.0, 1.0, pauli_z());
    CHECK(max_abs_diff(collide_once(sw.joint, frozen).mat(), sw.joint.mat()) <= 1e-13);
}

TEST_CASE("collisions preserve trace and positivity") {
    std::mt19937 rng(52);
    const CollisionParams p = params_for(0.3, 2.0, pauli_z());
    DensityMatrix state = random_switch(rng).joint;
    for (int n = 0; n < 20; ++n) {
        state = collide_once(state, p); // construction re-validates PSD and trace
        CHECK(std::abs(state.mat().trace() - Complex{1.0, 0.0}) <= 1e-10);
    }
}

TEST_CASE("analytic coefficients") {
    const CollisionParams p = params_for(0.2, 0.0, pauli_z());
    const AnalyticCoeffs k5 = analytic_coeffs(5, p);
    CHECK(k5.b_indef_plus == Catch::Approx(std::pow(std::cos(0.2), 10)).margin(1e-15));
    CHECK(k5.b_indef_plus == Catch::Approx(0.8176280678792109).margin(1e-12));
    CHECK(k5.b_def_plus == Catch::Approx(1.0).margin(1e-15));  // f_E = 0
    CHECK(k5.b_def_minus == Catch::Approx(1.0).margin(1e-15));

    const CollisionParams cold = params_for(0.2, beta_infinity(), pauli_z());
    for (int n = 1; n < 60; ++n) {
        const AnalyticCoeffs a = analytic_coeffs(n, cold);
        const AnalyticCoeffs b = analytic_coeffs(n - 1, cold);
        CHECK(std::abs(a.b_indef_plus) < std::abs(b.b_indef_plus));
        CHECK(a.b_def_plus >= 0.0);
        CHECK(a.b_def_plus <= 2.0);
    }
}

TEST_CASE("analytic n=0 recovers the closed switch state") {
    std::mt19937 rng(53);
    const SwitchOutput sw = random_switch(rng);
    const CollisionParams p = params_for(0.2, 1.0, pauli_z());
    CHECK(max_abs_diff(analytic_after_n(sw, 0, p).mat(), sw.joint.mat()) <= 1e-13);
}

TEST_CASE("oracle equivalence: iterated collisions match the closed form") {
    std::mt19937 rng(54);
    for (int trial = 0; trial < 3; ++trial) {
        const SwitchOutput sw = random_switch(rng);
        for (double g_tau : {0.05, 0.2, 0.5}) {
            for (double beta : {0.0, 1.0, 5.0, beta_infinity()}) {
                const CollisionParams p = params_for(g_tau, beta, pauli_z());
                DensityMatrix brute = sw.joint;
                for (int n = 1; n <= 20; ++n) {
                    brute = collide_once(brute, p);
                    const DensityMatrix closed = analytic_after_n(sw, n, p);
                    CHECK(trace_distance(brute, closed) <= 1e-9);
                }
            }
        }
    }
}

TEST_CASE("postselection after n collisions") {
    std::mt19937 rng(55);
    const SwitchOutput sw = random_switch(rng);
    const CollisionParams p = params_for(0.2, 1.0, pauli_z());

    // n = 0 agrees with the switch-level postselection.
    const DensityMatrix s0 = analytic_after_n(sw, 0, p);
    for (ControlOutcome o : {ControlOutcome::plus, ControlOutcome::minus}) {
        const PostSelection a = postselect_after_n(s0, o);
        const PostSelection b = postselect(sw, o);
        CHECK(a.probability == Catch::Approx(b.probability).margin(1e-12));
        if (b.conditional)
            CHECK(max_abs_diff(a.conditional->mat(), b.conditional->mat()) <= 1e-11);
    }

    // Probabilities close to 1 at every n.
    for (int n : {1, 3, 10, 40}) {
        const DensityMatrix sn = analytic_after_n(sw, n, p);
        const double pp = postselect_after_n(sn, ControlOutcome::plus).probability;
        const double pm = postselect_after_n(sn, ControlOutcome::minus).probability;
        CHECK(pp + pm == Catch::Approx(1.0).margin(1e-11));
    }
}

TEST_CASE("postselection probabilities drift to their thermal limits") {
    const SwitchOutput sw = bell_mub_switch(0.5);
    const CollisionParams cold = params_for(0.2, beta_infinity(), pair_hamiltonian(1.0));

    // Low temperature: p(+) climbs to 1, p(-) falls to 0, monotonically.
    double prev_plus = 0.0;
    for (int n = 0; n <= 50; ++n) {
        const DensityMatrix sn = analytic_after_n(sw, n, cold);
        const double pp = postselect_after_n(sn, ControlOutcome::plus).probability;
        CHECK(pp >= prev_plus - 1e-12);
        prev_plus = pp;
    }
    CHECK(prev_plus > 0.99);

    // Infinite temperature: both probabilities approach 1/2.
    const CollisionParams hot = params_for(0.2, 0.0, pair_hamiltonian(1.0));
    const DensityMatrix far = analytic_after_n(sw, 200, hot);
    CHECK(std::abs(postselect_after_n(far, ControlOutcome::plus).probability - 0.5) < 1e-3);
    CHECK(std::abs(postselect_after_n(far, ControlOutcome::minus).probability - 0.5) < 1e-3);
}

TEST_CASE("asymptotic factorization") {
    const SwitchOutput sw = bell_mub_switch(0.5);
    const CollisionParams p = params_for(0.2, 5.0, pair_hamiltonian(1.0));
    const int n = 300;

    const DensityMatrix state_n = analytic_after_n(sw, n, p);
    const DensityMatrix asym = asymptotic_state(sw, p);
    const ComplexMatrix u_n = unitary_from_hamiltonian(p.h_s, p.tau * n);
    const ComplexMatrix framed =
        conjugate_by(kron(u_n, ComplexMatrix::identity(2)), asym.mat());
    CHECK(trace_distance(state_n.mat(), framed) < 1e-3);

    // Control marginal of the asymptote is exactly the thermal state.
    const ComplexMatrix ctrl = partial_trace(asym.mat(), {4, 2}, {1});
    CHECK(max_abs_diff(ctrl, gibbs_state(control_hamiltonian(1.0), 5.0).mat()) <= 1e-12);
}

TEST_CASE("correlations decay monotonically after a transient") {
    const SwitchOutput sw = bell_mub_switch(0.4);
    const CollisionParams p = params_for(0.2, 2.0, pair_hamiltonian(1.0));
    double prev = 1e9;
    for (int n = 10; n <= 120; n += 10) {
        const DensityMatrix sn = analytic_after_n(sw, n, p);
        const ComplexMatrix rho_s = partial_trace(sn.mat(), {4, 2}, {0});
        const ComplexMatrix rho_c = partial_trace(sn.mat(), {4, 2}, {1});
        const double gap = max_abs_diff(sn.mat(), kron(rho_s, rho_c));
        CHECK(gap <= prev + 1e-12);
        prev = gap;
    }
    CHECK(prev < 1e-3);
}
