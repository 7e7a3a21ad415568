#pragma once

// The 2-map quantum switch: controlled-Kraus construction, decomposition of
// the joint target-control state into causally definite / indefinite blocks,
// and post-selection on the control.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qsw/errors.hpp"
#include "qsw/matrix.hpp"
#include "qsw/quantum.hpp"

namespace qsw {

enum class ControlOutcome { plus, minus };

inline const char* to_string(ControlOutcome o) {
    return o == ControlOutcome::plus ? "plus" : "minus";
}

inline ComplexMatrix control_outcome_ket(ControlOutcome o) {
    return o == ControlOutcome::plus ? plus_ket() : minus_ket();
}

// Joint switch output on target (x) control, control appended last. The a_*
// blocks refer to the |+> control decomposition:
//   joint = a_pp x |+><+| + a_pm x |+><-| + a_pm^dag x |-><+| + a_mm x |-><-|
struct SwitchOutput {
    DensityMatrix joint;
    UnnormalizedOperator a_def;
    UnnormalizedOperator a_indef;
    UnnormalizedOperator a_pp;
    UnnormalizedOperator a_mm;
    ComplexMatrix a_pm; // coherence block, not Hermitian
    bool plus_control;  // whether the control input was |+><+|
};

struct PostSelection {
    ControlOutcome outcome;
    double probability;
    // Empty when the outcome probability vanishes (<= 1e-12): the conditional
    // state is undefined, not renormalizable.
    std::optional<DensityMatrix> conditional;
};

// W = (m n) x |0><0| + (n m) x |1><1|, control appended as the last factor.
inline ComplexMatrix controlled_kraus(const ComplexMatrix& m, const ComplexMatrix& n) {
    if (!m.is_square() || !n.is_square() || m.rows() != n.rows())
        throw DimensionError("controlled_kraus: operands must be square with equal dimension");
    return kron(m * n, projector(basis_ket(2, 0))) + kron(n * m, projector(basis_ket(2, 1)));
}

inline DensityMatrix plus_control_state() {
    return DensityMatrix::from_ket(plus_ket(), {2});
}

// Applies the switch of channels M and N to rho_s with control rho_c:
// joint = sum_ij W_ij (rho_s x rho_c) W_ij^dag. The decomposed blocks use
//   A_xy = (1/4) sum_ij [M_i, N_j]_x rho_s [M_i, N_j]_y^dag,
// equivalently a_def / a_indef as the half-sum and half-difference; these
// describe the |+> control case regardless of rho_c.
inline SwitchOutput run_switch(const KrausChannel& m_ch, const KrausChannel& n_ch,
                               const DensityMatrix& rho_s, const DensityMatrix& rho_c) {
    const std::size_t d = rho_s.dim();
    if (m_ch.dim() != d || n_ch.dim() != d)
        throw DimensionError("run_switch: channel dimension does not match target state");
    if (rho_c.dim() != 2)
        throw DimensionError("run_switch: control must be a qubit");

    const ComplexMatrix input = kron(rho_s.mat(), rho_c.mat());
    ComplexMatrix joint(2 * d, 2 * d);
    ComplexMatrix def(d, d), indef(d, d), pp(d, d), mm(d, d), pm(d, d);
    for (const auto& m : m_ch.kraus()) {
        for (const auto& n : n_ch.kraus()) {
            const ComplexMatrix w = controlled_kraus(m, n);
            joint += w * input * w.adjoint();

            const ComplexMatrix mn = m * n;
            const ComplexMatrix nm = n * m;
            const ComplexMatrix anti = mn + nm;
            const ComplexMatrix comm = mn - nm;
            def += mn * rho_s.mat() * mn.adjoint() + nm * rho_s.mat() * nm.adjoint();
            indef += mn * rho_s.mat() * nm.adjoint() + nm * rho_s.mat() * mn.adjoint();
            pp += anti * rho_s.mat() * anti.adjoint();
            mm += comm * rho_s.mat() * comm.adjoint();
            pm += anti * rho_s.mat() * comm.adjoint();
        }
    }

    std::vector<std::size_t> joint_dims = rho_s.dims();
    joint_dims.push_back(2);
    const bool plus_control =
        max_abs_diff(rho_c.mat(), projector(plus_ket())) <= 1.0e-12;

    return SwitchOutput{
        DensityMatrix(std::move(joint), std::move(joint_dims)),
        UnnormalizedOperator::hermitian_psd(def * 0.5),
        UnnormalizedOperator::hermitian(indef * 0.5),
        UnnormalizedOperator::hermitian_psd(pp * 0.25),
        UnnormalizedOperator::hermitian_psd(mm * 0.25),
        pm * 0.25,
        plus_control,
    };
}

inline SwitchOutput run_switch(const KrausChannel& m_ch, const KrausChannel& n_ch,
                               const DensityMatrix& rho_s) {
    return run_switch(m_ch, n_ch, rho_s, plus_control_state());
}

namespace detail {

inline PostSelection postselect_block(const ComplexMatrix& block, ControlOutcome outcome,
                                      const std::vector<std::size_t>& target_dims) {
    double p = block.trace().real();
    if (p <= 1.0e-12)
        return PostSelection{outcome, std::max(p, 0.0), std::nullopt};
    p = std::min(p, 1.0);
    return PostSelection{outcome, p, DensityMatrix(block * (1.0 / p), target_dims)};
}

} // namespace detail

// Post-selection of the control in the |+>/|-> basis: probability tr(A_xx),
// conditional A_xx / tr(A_xx). Requires a |+> control switch output.
inline PostSelection postselect(const SwitchOutput& out, ControlOutcome outcome) {
    if (!out.plus_control)
        throw ValidationError("postselect: decomposition blocks require a |+> control input");
    const UnnormalizedOperator& block =
        outcome == ControlOutcome::plus ? out.a_pp : out.a_mm;
    std::vector<std::size_t> target_dims = out.joint.dims();
    target_dims.pop_back();
    return detail::postselect_block(block.mat(), outcome, target_dims);
}

} // namespace qsw
