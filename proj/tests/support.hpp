#pragma once

// Shared test helpers: seeded random states, channels and unitaries, plus
// small independent oracles. Everything here is deliberately written against
// the definitions rather than the library's internal code paths.

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "qsw/matrix.hpp"
#include "qsw/eigen.hpp"
#include "qsw/quantum.hpp"

namespace qsw::test {

inline ComplexMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = Complex{gauss(rng), gauss(rng)};
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937& rng, std::size_t n) {
    const ComplexMatrix g = random_matrix(rng, n, n);
    return (g + g.adjoint()) * 0.5;
}

// Ginibre construction: G G^dag / tr.
inline DensityMatrix random_density(std::mt19937& rng, std::vector<std::size_t> dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    const ComplexMatrix g = random_matrix(rng, n, n);
    ComplexMatrix rho = g * g.adjoint();
    rho = rho * (1.0 / rho.trace().real());
    return DensityMatrix(rho, std::move(dims));
}

inline ComplexMatrix random_unitary(std::mt19937& rng, std::size_t n) {
    return unitary_from_hamiltonian(random_hermitian(rng, n), 1.0);
}

inline ComplexMatrix random_pure_ket(std::mt19937& rng, std::size_t n) {
    ComplexMatrix v = random_matrix(rng, n, 1);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(v(i, 0));
    return v * (1.0 / std::sqrt(norm2));
}

// Random channel with `kraus_count` operators via a Stinespring dilation:
// K_i = (1 x <i|) U (1 x |0>) for a random unitary U on system x ancilla,
// which satisfies completeness by construction.
inline KrausChannel random_channel(std::mt19937& rng, std::size_t dim, std::size_t kraus_count) {
    const ComplexMatrix u = random_unitary(rng, dim * kraus_count);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < kraus_count; ++i) {
        ComplexMatrix k(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                k(r, c) = u(r * kraus_count + i, c * kraus_count + 0);
        kraus.push_back(std::move(k));
    }
    return KrausChannel(std::move(kraus), "random");
}

// Channel whose Kraus operators are all diagonal (hence mutually commuting
// with any other diagonal channel).
inline KrausChannel random_diagonal_channel(std::mt19937& rng, std::size_t dim) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double p = 0.2 + 0.6 * uni(rng);
    ComplexMatrix k1(dim, dim), k2(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        k1(i, i) = std::polar(std::sqrt(p), 2.0 * uni(rng));
        k2(i, i) = std::polar(std::sqrt(1.0 - p), 2.0 * uni(rng));
    }
    return KrausChannel({k1, k2}, "diag");
}

} // namespace qsw::test
