#pragma once

// Wootters concurrence for two-qubit states.

#include <array>
#include <cmath>
#include <cstddef>

#include "qsw/eigen.hpp"
#include "qsw/errors.hpp"
#include "qsw/matrix.hpp"
#include "qsw/quantum.hpp"

namespace qsw {

struct ConcurrenceResult {
    double value;                  // max(0, l1 - l2 - l3 - l4), clamped to [0, 1]
    std::array<double, 4> lambdas; // descending
};

// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y), conjugation entrywise in
// the computational basis.
inline ComplexMatrix spin_flip(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw DimensionError("spin_flip: expected a two-qubit (4x4) state");
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    return yy * rho.mat().conjugate() * yy;
}

// Mixed-state concurrence. The lambdas are the square roots of the
// eigenvalues of rho * spin_flip(rho), computed through the Hermitian PSD
// product sqrt(rho) * spin_flip(rho) * sqrt(rho) so only Hermitian kernels
// are involved.
inline ConcurrenceResult concurrence_mixed(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw DimensionError("concurrence_mixed: expected a two-qubit (4x4) state");
    const ComplexMatrix root = psd_sqrt(rho.mat());
    const ComplexMatrix product = root * spin_flip(rho) * root;
    const HermitianEigen eig = herm_eig(product);

    ConcurrenceResult out{};
    for (std::size_t j = 0; j < 4; ++j) {
        const double lam = eig.eigenvalues[j];
        if (lam < -1.0e-10)
            throw NotPsdError("concurrence_mixed: spin-flip product eigenvalue below -1e-10");
        out.lambdas[j] = std::sqrt(std::max(lam, 0.0));
    }
    const double c = out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3];
    out.value = std::min(std::max(c, 0.0), 1.0);
    return out;
}

enum class Bipartition { a, b };

// Pure-state concurrence sqrt(2 (1 - tr rho_local^2)) for a normalized
// two-qubit state vector.
inline double concurrence_pure(const ComplexMatrix& psi, Bipartition cut = Bipartition::a) {
    if (psi.rows() != 4 || psi.cols() != 1)
        throw DimensionError("concurrence_pure: expected a 4-component column vector");
    double norm2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) norm2 += std::norm(psi(i, 0));
    if (std::abs(std::sqrt(norm2) - 1.0) > 1.0e-10)
        throw ValidationError("concurrence_pure: state vector not normalized");

    const std::size_t keep = cut == Bipartition::a ? 0 : 1;
    const ComplexMatrix local = partial_trace(projector(psi), {2, 2}, {keep});
    const double purity = (local * local).trace().real();
    return std::sqrt(std::max(2.0 * (1.0 - purity), 0.0));
}

} // namespace qsw
