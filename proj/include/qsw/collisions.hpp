#pragma once

// Environmental action on the control between the switch and its
// post-selection: a brute-force per-collision simulator (fresh thermal qubit,
// exact joint unitary, trace out) and the equivalent closed-form assembly of
// the joint state after n collisions. The two paths are independent by
// construction and cross-validated in the tests.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qsw/errors.hpp"
#include "qsw/matrix.hpp"
#include "qsw/quantum.hpp"
#include "qsw/switch.hpp"

namespace qsw {

// -omega sigma_x / 2; shared by the control and every environment qubit, so
// the |+>/|-> post-selection basis is stationary under free evolution.
inline ComplexMatrix control_hamiltonian(double omega) {
    return pauli_x() * (-omega / 2.0);
}

// V = (g/2)(sigma_z x sigma_z + sigma_y x sigma_y) on control (x) ancilla;
// an excitation exchange in the x basis, commuting with H_C + H_E.
inline ComplexMatrix interaction_hamiltonian(double g) {
    return (kron(pauli_z(), pauli_z()) + kron(pauli_y(), pauli_y())) * (g / 2.0);
}

// Physical constants of the open-control model. h_s is the target
// Hamiltonian entering both the brute-force total unitary and the analytic
// free-evolution frame.
struct CollisionParams {
    double g;
    double tau;
    double omega;
    double beta_e;
    ComplexMatrix h_s;

    CollisionParams(double g_, double tau_, double omega_, double beta_e_, ComplexMatrix h_s_)
        : g(g_), tau(tau_), omega(omega_), beta_e(beta_e_), h_s(std::move(h_s_)) {
        if (!(g >= 0.0) || !(tau >= 0.0))
            throw ValidationError("CollisionParams: g and tau must be >= 0");
        if (!(g * tau < 1.5707963267948966))
            throw ValidationError("CollisionParams: g*tau must lie below pi/2");
        if (!(omega > 0.0))
            throw ValidationError("CollisionParams: omega must be positive");
        if (beta_e < 0.0 || std::isnan(beta_e))
            throw ValidationError("CollisionParams: beta_e must be >= 0 or +inf");
        if (!h_s.is_square() || !h_s.is_hermitian(1.0e-10))
            throw ValidationError("CollisionParams: h_s must be Hermitian");
    }

    DensityMatrix environment_state() const {
        return gibbs_state(control_hamiltonian(omega), beta_e);
    }
};

// One collision: couple a fresh thermal ancilla, evolve the full S-C-E system
// with exp(-i tau H_tot), trace the ancilla out.
inline DensityMatrix collide_once(const DensityMatrix& rho_sc, const CollisionParams& p) {
    const auto& dims = rho_sc.dims();
    if (dims.size() < 2 || dims.back() != 2)
        throw DimensionError("collide_once: state must end in a qubit control subsystem");
    const std::size_t d_s = rho_sc.dim() / 2;
    if (p.h_s.rows() != d_s)
        throw DimensionError("collide_once: h_s does not match the target dimension");

    const ComplexMatrix i_s = ComplexMatrix::identity(d_s);
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix h_ce = control_hamiltonian(p.omega);
    const ComplexMatrix h_tot = kron(p.h_s, i2, i2) + kron(i_s, h_ce, i2) +
                                kron(i_s, i2, h_ce) + kron(i_s, interaction_hamiltonian(p.g));
    const ComplexMatrix u = unitary_from_hamiltonian(h_tot, p.tau);

    const ComplexMatrix big = kron(rho_sc.mat(), p.environment_state().mat());
    const ComplexMatrix evolved = conjugate_by(u, big);

    std::vector<std::size_t> big_dims = dims;
    big_dims.push_back(2);
    std::vector<std::size_t> keep(dims.size());
    for (std::size_t s = 0; s < keep.size(); ++s) keep[s] = s;
    return DensityMatrix(partial_trace(evolved, big_dims, keep), dims);
}

// Scalar coefficients of the closed form after n collisions.
struct AnalyticCoeffs {
    int n;
    double b_def_plus;
    double b_def_minus;
    double b_indef_plus;
    double b_indef_minus;
    Complex coherence_factor; // e^{i n tau omega} cos^n(g tau)
};

inline AnalyticCoeffs analytic_coeffs(int n, const CollisionParams& p) {
    if (n < 0)
        throw ValidationError("analytic_coeffs: collision count must be >= 0");
    const double c = std::cos(p.g * p.tau);
    const double c2n = std::pow(c, 2 * n);
    const double f = f_thermal(p.beta_e, p.omega);
    return AnalyticCoeffs{
        n,
        1.0 + f * (1.0 - c2n),
        1.0 - f * (1.0 - c2n),
        c2n,
        -c2n,
        std::polar(1.0, n * p.tau * p.omega) * std::pow(c, n),
    };
}

namespace detail {

// (1_S x <x|) rho (1_S x |y>) for a state with a qubit control as last factor.
inline ComplexMatrix control_block(const ComplexMatrix& rho, std::size_t d_s,
                                   const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix out(d_s, d_s);
    for (std::size_t i = 0; i < d_s; ++i)
        for (std::size_t j = 0; j < d_s; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b)
                    acc += std::conj(x(a, 0)) * rho(2 * i + a, 2 * j + b) * y(b, 0);
            out(i, j) = acc;
        }
    return out;
}

} // namespace detail

// Closed-form joint state after n collisions:
//   B_pp/B_mm = (b_def/2) U^n A_def U^dag n + (b_indef/2) U^n A_indef U^dag n,
//   B_pm = e^{i n tau omega} cos^n(g tau) U^n A_pm U^dag n,  U = exp(-i tau H_S).
inline DensityMatrix analytic_after_n(const SwitchOutput& sw, int n, const CollisionParams& p) {
    if (!sw.plus_control)
        throw ValidationError("analytic_after_n: switch output must use a |+> control");
    const std::size_t d_s = sw.joint.dim() / 2;
    if (p.h_s.rows() != d_s)
        throw DimensionError("analytic_after_n: h_s does not match the target dimension");
    const AnalyticCoeffs k = analytic_coeffs(n, p);

    const ComplexMatrix u_n = unitary_from_hamiltonian(p.h_s, p.tau * n);
    const ComplexMatrix a_def_n = conjugate_by(u_n, sw.a_def.mat());
    const ComplexMatrix a_indef_n = conjugate_by(u_n, sw.a_indef.mat());
    const ComplexMatrix a_pm_n = conjugate_by(u_n, sw.a_pm);

    const ComplexMatrix b_pp = a_def_n * (0.5 * k.b_def_plus) + a_indef_n * (0.5 * k.b_indef_plus);
    const ComplexMatrix b_mm = a_def_n * (0.5 * k.b_def_minus) + a_indef_n * (0.5 * k.b_indef_minus);
    const ComplexMatrix b_pm = a_pm_n * k.coherence_factor;

    const ComplexMatrix plus = plus_ket();
    const ComplexMatrix minus = minus_ket();
    const ComplexMatrix joint = kron(b_pp, projector(plus)) +
                                kron(b_pm, plus * minus.adjoint()) +
                                kron(b_pm.adjoint(), minus * plus.adjoint()) +
                                kron(b_mm, projector(minus));
    return DensityMatrix(joint, sw.joint.dims());
}

// Post-selection of the control of an S (x) C state after n collisions:
// probability tr{(1 x |pm><pm|) rho}, conditional the renormalized block.
inline PostSelection postselect_after_n(const DensityMatrix& state_n, ControlOutcome outcome) {
    const auto& dims = state_n.dims();
    if (dims.size() < 2 || dims.back() != 2)
        throw DimensionError("postselect_after_n: state must end in a qubit control subsystem");
    const ComplexMatrix sel = control_outcome_ket(outcome);
    const ComplexMatrix block = detail::control_block(state_n.mat(), state_n.dim() / 2, sel, sel);
    std::vector<std::size_t> target_dims(dims.begin(), dims.end() - 1);
    return detail::postselect_block(block, outcome, target_dims);
}

// n -> inf limit: correlations vanish and the joint state factorizes into the
// causally ordered target mixture times the thermal control. Returned in the
// unrotated frame; comparisons at finite n must apply the matching U_S^n.
inline DensityMatrix asymptotic_state(const SwitchOutput& sw, const CollisionParams& p) {
    if (!sw.plus_control)
        throw ValidationError("asymptotic_state: switch output must use a |+> control");
    const DensityMatrix theta = gibbs_state(control_hamiltonian(p.omega), p.beta_e);
    return DensityMatrix(kron(sw.a_def.mat(), theta.mat()), sw.joint.dims());
}

} // namespace qsw
