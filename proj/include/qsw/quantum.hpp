#pragma once

// Quantum-state and channel layer: validated density matrices, Kraus
// channels, projective monitoring maps, Gibbs states.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qsw/eigen.hpp"
#include "qsw/errors.hpp"
#include "qsw/matrix.hpp"

namespace qsw {

inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() { return {{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}}; }
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

// Computational basis column vector |index> in dimension dim.
inline ComplexMatrix basis_ket(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("basis_ket: index out of range");
    ComplexMatrix k(dim, 1);
    k(index, 0) = 1.0;
    return k;
}

inline ComplexMatrix plus_ket() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{s}, {s}};
}

inline ComplexMatrix minus_ket() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{s}, {-s}};
}

inline ComplexMatrix projector(const ComplexMatrix& ket) {
    if (ket.cols() != 1) throw DimensionError("projector: expected a column vector");
    return ket * ket.adjoint();
}

// Validated quantum state: Hermitian, unit trace, PSD (all within 1e-10),
// tagged with its subsystem dimensions.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix mat, std::vector<std::size_t> dims)
        : mat_(std::move(mat)), dims_(std::move(dims)) {
        if (!mat_.is_square())
            throw DimensionError("DensityMatrix: matrix not square");
        std::size_t total = 1;
        for (std::size_t d : dims_) total *= d;
        if (dims_.empty() || total != mat_.rows())
            throw DimensionError("DensityMatrix: subsystem dims do not match matrix dimension");
        if (!mat_.all_finite())
            throw ValidationError("DensityMatrix: non-finite entries");
        if (!mat_.is_hermitian(1.0e-10))
            throw ValidationError("DensityMatrix: not Hermitian within 1e-10");
        if (std::abs(mat_.trace() - Complex{1.0, 0.0}) > 1.0e-10)
            throw ValidationError("DensityMatrix: trace differs from 1 by more than 1e-10");
        const auto eig = herm_eig(mat_);
        if (eig.eigenvalues.back() < -1.0e-10)
            throw ValidationError("DensityMatrix: eigenvalue below -1e-10");
    }

    static DensityMatrix from_ket(const ComplexMatrix& ket, std::vector<std::size_t> dims) {
        return DensityMatrix(projector(ket), std::move(dims));
    }

    const ComplexMatrix& mat() const { return mat_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return mat_.rows(); }

private:
    ComplexMatrix mat_;
    std::vector<std::size_t> dims_;
};

// CPTP map as a finite Kraus list; completeness sum K^dag K = 1 is checked at
// construction (1e-10).
class KrausChannel {
public:
    KrausChannel(std::vector<ComplexMatrix> kraus, std::string label)
        : kraus_(std::move(kraus)), label_(std::move(label)) {
        if (kraus_.empty())
            throw ValidationError("KrausChannel '" + label_ + "': empty Kraus list");
        const std::size_t d = kraus_.front().rows();
        ComplexMatrix sum(d, d);
        for (const auto& k : kraus_) {
            if (!k.is_square() || k.rows() != d)
                throw DimensionError("KrausChannel '" + label_ + "': mixed Kraus dimensions");
            if (!k.all_finite())
                throw ValidationError("KrausChannel '" + label_ + "': non-finite Kraus entries");
            sum += k.adjoint() * k;
        }
        if (max_abs_diff(sum, ComplexMatrix::identity(d)) > 1.0e-10)
            throw ValidationError("KrausChannel '" + label_ + "': completeness relation violated");
    }

    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
    const std::string& label() const { return label_; }
    std::size_t dim() const { return kraus_.front().rows(); }

private:
    std::vector<ComplexMatrix> kraus_;
    std::string label_;
};

// Complete set of mutually orthogonal projectors labelling measurement outcomes.
class ProjectorSet {
public:
    ProjectorSet(std::vector<ComplexMatrix> projectors, std::vector<std::string> labels)
        : projectors_(std::move(projectors)), labels_(std::move(labels)) {
        if (projectors_.empty() || projectors_.size() != labels_.size())
            throw ValidationError("ProjectorSet: need one label per projector");
        const std::size_t d = projectors_.front().rows();
        ComplexMatrix sum(d, d);
        for (std::size_t i = 0; i < projectors_.size(); ++i) {
            const auto& pi = projectors_[i];
            if (!pi.is_square() || pi.rows() != d)
                throw DimensionError("ProjectorSet: mixed projector dimensions");
            for (std::size_t j = 0; j < projectors_.size(); ++j) {
                const ComplexMatrix prod = pi * projectors_[j];
                const ComplexMatrix expect = (i == j) ? pi : ComplexMatrix::zero(d, d);
                if (max_abs_diff(prod, expect) > 1.0e-12)
                    throw ValidationError("ProjectorSet: orthogonality violated");
            }
            sum += pi;
        }
        if (max_abs_diff(sum, ComplexMatrix::identity(d)) > 1.0e-12)
            throw ValidationError("ProjectorSet: completeness violated");
    }

    const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t dim() const { return projectors_.front().rows(); }

private:
    std::vector<ComplexMatrix> projectors_;
    std::vector<std::string> labels_;
};

// Subnormalized Hermitian block whose trace is a probability weight. The
// conditional blocks of a switch output are PSD; the order-interference
// component A_indef generally is not, so PSD is checked only on request.
class UnnormalizedOperator {
public:
    static UnnormalizedOperator hermitian(ComplexMatrix mat) {
        return UnnormalizedOperator(std::move(mat), false);
    }

    static UnnormalizedOperator hermitian_psd(ComplexMatrix mat) {
        return UnnormalizedOperator(std::move(mat), true);
    }

    const ComplexMatrix& mat() const { return mat_; }
    double weight() const { return weight_; }

private:
    UnnormalizedOperator(ComplexMatrix mat, bool require_psd) : mat_(std::move(mat)) {
        if (!mat_.is_square())
            throw DimensionError("UnnormalizedOperator: matrix not square");
        if (!mat_.all_finite())
            throw ValidationError("UnnormalizedOperator: non-finite entries");
        if (!mat_.is_hermitian(1.0e-10))
            throw ValidationError("UnnormalizedOperator: not Hermitian within 1e-10");
        weight_ = mat_.trace().real();
        if (require_psd) {
            if (weight_ < -1.0e-10)
                throw ValidationError("UnnormalizedOperator: negative weight");
            const auto eig = herm_eig(mat_);
            if (eig.eigenvalues.back() < -1.0e-10)
                throw NotPsdError("UnnormalizedOperator: eigenvalue below -1e-10");
        }
    }

    ComplexMatrix mat_;
    double weight_ = 0.0;
};

// op on `subsystem`, identity elsewhere.
inline ComplexMatrix embed(const ComplexMatrix& op, const std::vector<std::size_t>& dims,
                           std::size_t subsystem) {
    if (subsystem >= dims.size())
        throw DimensionError("embed: subsystem index out of range");
    if (op.rows() != dims[subsystem] || !op.is_square())
        throw DimensionError("embed: operator does not match subsystem dimension");
    ComplexMatrix out = op;
    std::size_t before = 1;
    for (std::size_t s = 0; s < subsystem; ++s) before *= dims[s];
    std::size_t after = 1;
    for (std::size_t s = subsystem + 1; s < dims.size(); ++s) after *= dims[s];
    if (before > 1) out = kron(ComplexMatrix::identity(before), out);
    if (after > 1) out = kron(out, ComplexMatrix::identity(after));
    return out;
}

// sum_k K rho K^dag
inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.dim() != rho.dim())
        throw DimensionError("apply_channel: channel and state dimensions differ");
    ComplexMatrix out(rho.dim(), rho.dim());
    for (const auto& k : ch.kraus())
        out += k * rho.mat() * k.adjoint();
    return DensityMatrix(std::move(out), rho.dims());
}

// Nonselective projective measurement of the observable with eigenprojectors
// `obs` on one subsystem: sum_a (O_a x 1) rho (O_a x 1).
inline DensityMatrix dephase(const DensityMatrix& rho, const ProjectorSet& obs,
                             std::size_t subsystem) {
    ComplexMatrix out(rho.dim(), rho.dim());
    for (const auto& p : obs.projectors()) {
        const ComplexMatrix full = embed(p, rho.dims(), subsystem);
        out += full * rho.mat() * full;
    }
    return DensityMatrix(std::move(out), rho.dims());
}

// Monitoring of strength epsilon: K_0 = sqrt(1-eps) 1, K_j = sqrt(eps) (O_j x 1).
// Acts as (1-eps) rho + eps * dephase(rho).
inline KrausChannel monitoring_channel(const ProjectorSet& obs, double epsilon,
                                       std::size_t subsystem,
                                       const std::vector<std::size_t>& total_dims) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ValidationError("monitoring_channel: epsilon outside [0, 1]");
    std::size_t total = 1;
    for (std::size_t d : total_dims) total *= d;
    std::vector<ComplexMatrix> kraus;
    kraus.push_back(ComplexMatrix::identity(total) * std::sqrt(1.0 - epsilon));
    const double se = std::sqrt(epsilon);
    for (const auto& p : obs.projectors())
        kraus.push_back(embed(p, total_dims, subsystem) * se);
    return KrausChannel(std::move(kraus),
                        "monitor(" + obs.labels().front() + ", eps=" + std::to_string(epsilon) + ")");
}

inline constexpr double beta_infinity() { return std::numeric_limits<double>::infinity(); }

// tanh(beta * omega / 2); 1 exactly at the beta = +inf sentinel.
inline double f_thermal(double beta, double omega) {
    if (std::isinf(beta)) return 1.0;
    return std::tanh(beta * omega / 2.0);
}

// exp(-beta h)/Z. Spectrum is shifted by the ground energy before
// exponentiation so large beta cannot overflow; beta = +inf projects onto the
// (possibly degenerate) ground space.
inline DensityMatrix gibbs_state(const ComplexMatrix& h, double beta) {
    if (beta < 0.0 || std::isnan(beta))
        throw ValidationError("gibbs_state: beta must be >= 0 or +inf");
    const HermitianEigen eig = herm_eig(h);
    const double ground = eig.eigenvalues.back();
    std::vector<double> w(eig.eigenvalues.size());
    double z = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double gap = eig.eigenvalues[j] - ground;
        w[j] = std::isinf(beta) ? (gap < 1.0e-12 ? 1.0 : 0.0) : std::exp(-beta * gap);
        z += w[j];
    }
    ComplexMatrix scaled = eig.eigenvectors;
    for (std::size_t j = 0; j < w.size(); ++j)
        for (std::size_t i = 0; i < w.size(); ++i)
            scaled(i, j) *= w[j] / z;
    return DensityMatrix(scaled * eig.eigenvectors.adjoint(), {h.rows()});
}

// sigma_z eigenbasis {|0>,|1>} and sigma_x eigenbasis {|+>,|->}; every cross
// overlap has squared modulus 1/2.
inline std::pair<ProjectorSet, ProjectorSet> mub_qubit_bases() {
    ProjectorSet zbasis({projector(basis_ket(2, 0)), projector(basis_ket(2, 1))}, {"z0", "z1"});
    ProjectorSet xbasis({projector(plus_ket()), projector(minus_ket())}, {"x+", "x-"});
    return {std::move(zbasis), std::move(xbasis)};
}

// (1/2) ||a - b||_1 via the eigenvalues of the Hermitian difference.
inline double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const HermitianEigen eig = herm_eig(a - b);
    double sum = 0.0;
    for (double lam : eig.eigenvalues) sum += std::abs(lam);
    return 0.5 * sum;
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    return trace_distance(a.mat(), b.mat());
}

} // namespace qsw
