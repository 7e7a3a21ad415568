#pragma once

// Hermitian eigendecomposition via cyclic Jacobi with complex rotations, plus
// the spectral-function helpers built on it (exp(-itH), PSD square root).
// Deterministic: fixed sweep order, fixed eigenvector phase convention.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "qsw/errors.hpp"
#include "qsw/matrix.hpp"

namespace qsw {

struct HermitianEigen {
    std::vector<double> eigenvalues; // sorted descending
    ComplexMatrix eigenvectors;      // orthonormal columns, column j pairs with eigenvalues[j]
};

namespace detail {

// One complex Jacobi rotation J = diag(e^{i phi}, 1) * [[c, s], [-s, c]]
// applied as S <- J^dag S J on the (p, q) plane, chosen to zero S(p, q).
inline void jacobi_rotate(ComplexMatrix& s, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex spq = s(p, q);
    const double r = std::abs(spq);
    if (r == 0.0) return;
    const Complex phase = spq / r;

    const double app = s(p, p).real();
    const double aqq = s(q, q).real();
    const double theta = (aqq - app) / (2.0 * r);
    double t;
    if (std::abs(theta) > 1.0e150) {
        t = 1.0 / (2.0 * theta);
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double sn = t * c;

    const Complex j00 = c * phase;
    const Complex j01 = sn * phase;

    const std::size_t n = s.rows();
    // S <- S * J
    for (std::size_t k = 0; k < n; ++k) {
        const Complex skp = s(k, p);
        const Complex skq = s(k, q);
        s(k, p) = skp * j00 - sn * skq;
        s(k, q) = skp * j01 + c * skq;
    }
    // S <- J^dag * S
    for (std::size_t k = 0; k < n; ++k) {
        const Complex spk = s(p, k);
        const Complex sqk = s(q, k);
        s(p, k) = std::conj(j00) * spk - sn * sqk;
        s(q, k) = std::conj(j01) * spk + c * sqk;
    }
    // Analytically zero / real after the rotation; drop the round-off residue.
    s(p, q) = 0.0;
    s(q, p) = 0.0;
    s(p, p) = Complex{s(p, p).real(), 0.0};
    s(q, q) = Complex{s(q, q).real(), 0.0};

    // V <- V * J
    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * j00 - sn * vkq;
        v(k, q) = vkp * j01 + c * vkq;
    }
}

inline double max_offdiag(const ComplexMatrix& s) {
    double m = 0.0;
    for (std::size_t p = 0; p + 1 < s.rows(); ++p)
        for (std::size_t q = p + 1; q < s.rows(); ++q)
            m = std::max(m, std::abs(s(p, q)));
    return m;
}

} // namespace detail

// Requires a Hermitian within 1e-10 (max-abs); the Hermitian part (a+a^dag)/2
// is diagonalized. Eigenvector phases are fixed so the first component above
// 1e-12 in magnitude is real positive.
inline HermitianEigen herm_eig(const ComplexMatrix& a) {
    if (!a.is_square())
        throw DimensionError("herm_eig: matrix not square");
    if (!a.all_finite())
        throw ValidationError("herm_eig: non-finite entries");
    if (!a.is_hermitian(1.0e-10))
        throw ValidationError("herm_eig: matrix not Hermitian within 1e-10");

    const std::size_t n = a.rows();
    ComplexMatrix s = (a + a.adjoint()) * 0.5;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, s.max_abs());
    const double stop = 1.0e-15 * scale;
    const std::size_t max_sweeps = 100 * n;

    bool converged = (n == 1) || detail::max_offdiag(s) <= stop;
    for (std::size_t sweep = 0; !converged && sweep < max_sweeps; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                detail::jacobi_rotate(s, v, p, q);
        converged = detail::max_offdiag(s) <= stop;
    }
    if (!converged)
        throw NumericalError("herm_eig: Jacobi did not converge within 100*dim sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return s(i, i).real() > s(j, j).real(); });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = s(src, src).real();
        Complex phase{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vi = v(i, src);
            if (std::abs(vi) > 1.0e-12) {
                phase = std::conj(vi) / std::abs(vi);
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            out.eigenvectors(i, j) = v(i, src) * phase;
    }
    return out;
}

// V f(diag) V^dag for a scalar function applied to the eigenvalues.
template <typename Fn>
inline ComplexMatrix spectral_map(const HermitianEigen& eig, Fn&& f) {
    const std::size_t n = eig.eigenvalues.size();
    ComplexMatrix scaled = eig.eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        const Complex fj = f(eig.eigenvalues[j]);
        for (std::size_t i = 0; i < n; ++i)
            scaled(i, j) *= fj;
    }
    return scaled * eig.eigenvectors.adjoint();
}

// exp(-i t h) for Hermitian h.
inline ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t) {
    const HermitianEigen eig = herm_eig(h);
    return spectral_map(eig, [t](double lam) { return std::polar(1.0, -t * lam); });
}

// Square root of a Hermitian PSD matrix; eigenvalues in [-1e-8, 0) are
// clamped to zero, anything below -1e-8 is rejected.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
    const HermitianEigen eig = herm_eig(a);
    for (double lam : eig.eigenvalues)
        if (lam < -1.0e-8)
            throw NotPsdError("psd_sqrt: eigenvalue below -1e-8");
    return spectral_map(eig, [](double lam) { return Complex{std::sqrt(std::max(lam, 0.0)), 0.0}; });
}

} // namespace qsw
