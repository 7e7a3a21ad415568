#pragma once

// Dense complex matrices sized for small multi-qubit problems (<= 16x16 in
// practice). Row-major storage, value semantics, no aliasing tricks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qsw/errors.hpp"

namespace qsw {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {
        if (rows == 0 || cols == 0)
            throw DimensionError("ComplexMatrix: dimensions must be positive");
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        if (rows_ == 0)
            throw DimensionError("ComplexMatrix: empty initializer");
        cols_ = rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw DimensionError("ComplexMatrix: ragged initializer rows");
            entries_.insert(entries_.end(), r.begin(), r.end());
        }
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return entries_; }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        require_same_shape(o, "operator+");
        ComplexMatrix r = *this;
        for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] += o.entries_[k];
        return r;
    }

    ComplexMatrix operator-(const ComplexMatrix& o) const {
        require_same_shape(o, "operator-");
        ComplexMatrix r = *this;
        for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] -= o.entries_[k];
        return r;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "operator+=");
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "operator-=");
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
        return *this;
    }

    ComplexMatrix operator*(const ComplexMatrix& o) const {
        if (cols_ != o.rows_)
            throw DimensionError("matrix product: inner dimensions differ");
        ComplexMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Complex aik = (*this)(i, k);
                if (aik == Complex{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += aik * o(k, j);
            }
        }
        return r;
    }

    ComplexMatrix operator*(Complex s) const {
        ComplexMatrix r = *this;
        for (auto& e : r.entries_) e *= s;
        return r;
    }

    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }
    friend ComplexMatrix operator*(double s, const ComplexMatrix& m) { return m * Complex{s, 0.0}; }
    ComplexMatrix operator*(double s) const { return *this * Complex{s, 0.0}; }

    ComplexMatrix operator-() const { return *this * Complex{-1.0, 0.0}; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix r = *this;
        for (auto& e : r.entries_) e = std::conj(e);
        return r;
    }

    Complex trace() const {
        if (!is_square())
            throw DimensionError("trace: matrix not square");
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& e : entries_) m = std::max(m, std::abs(e));
        return m;
    }

    bool all_finite() const {
        for (const auto& e : entries_)
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
        return true;
    }

    bool is_hermitian(double tol) const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

private:
    void require_same_shape(const ComplexMatrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError(std::string(what) + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

// U A U^dag
inline ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& a) {
    return u * a * u.adjoint();
}

// Kronecker product; (i*rb+k, j*cb+l) = a(i,j) * b(k,l).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() == 0 || b.rows() == 0)
        throw DimensionError("kron: empty operand");
    constexpr std::size_t kMaxDim = std::size_t{1} << 20;
    if (a.rows() * b.rows() > kMaxDim || a.cols() * b.cols() > kMaxDim)
        throw DimensionError("kron: product dimension exceeds 2^20");
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
    return kron(kron(a, b), c);
}

namespace detail {

// Row-major strides of a tensor-product space with the given factor dimensions.
inline std::vector<std::size_t> subsystem_strides(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t s = dims.size(); s-- > 1;)
        strides[s - 1] = strides[s] * dims[s];
    return strides;
}

// Flat offsets of every multi-index over the chosen subsystems, enumerated in
// row-major order of those subsystems.
inline std::vector<std::size_t> flat_offsets(const std::vector<std::size_t>& subsystems,
                                             const std::vector<std::size_t>& dims,
                                             const std::vector<std::size_t>& strides) {
    std::size_t count = 1;
    for (std::size_t s : subsystems) count *= dims[s];
    std::vector<std::size_t> offsets;
    offsets.reserve(count);
    std::vector<std::size_t> digits(subsystems.size(), 0);
    for (std::size_t it = 0; it < count; ++it) {
        std::size_t off = 0;
        for (std::size_t k = 0; k < subsystems.size(); ++k)
            off += digits[k] * strides[subsystems[k]];
        offsets.push_back(off);
        for (std::size_t k = subsystems.size(); k-- > 0;) {
            if (++digits[k] < dims[subsystems[k]]) break;
            digits[k] = 0;
        }
    }
    return offsets;
}

} // namespace detail

// Partial trace over the complement of `keep`; kept subsystems stay in their
// original order.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho,
                                   const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& keep) {
    if (!rho.is_square())
        throw DimensionError("partial_trace: matrix not square");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw DimensionError("partial_trace: zero subsystem dimension");
        total *= d;
    }
    if (total != rho.rows())
        throw DimensionError("partial_trace: dims do not factor the matrix dimension");

    std::vector<std::size_t> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw DimensionError("partial_trace: duplicate subsystem index");
    for (std::size_t s : kept)
        if (s >= dims.size()) throw DimensionError("partial_trace: subsystem index out of range");

    std::vector<std::size_t> traced;
    for (std::size_t s = 0; s < dims.size(); ++s)
        if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);

    const auto strides = detail::subsystem_strides(dims);
    const auto kept_off = detail::flat_offsets(kept, dims, strides);
    const auto traced_off = detail::flat_offsets(traced, dims, strides);

    ComplexMatrix out(kept_off.size(), kept_off.size());
    for (std::size_t i = 0; i < kept_off.size(); ++i)
        for (std::size_t j = 0; j < kept_off.size(); ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t t : traced_off)
                acc += rho(kept_off[i] + t, kept_off[j] + t);
            out(i, j) = acc;
        }
    return out;
}

} // namespace qsw
