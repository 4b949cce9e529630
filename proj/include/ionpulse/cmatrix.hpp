// Small dense complex matrices and the matrix exponential used by the
// piecewise-constant propagator.  Dimensions here stay tiny (<= a few
// hundred), so a plain row-major buffer with naive kernels is enough.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ionpulse/errors.hpp"

namespace ionpulse {

using cdouble = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const { return n_; }
    cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<cdouble>& data() const { return a_; }

    CMatrix& operator+=(const CMatrix& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }

    CMatrix& operator*=(cdouble c) {
        for (auto& x : a_) x *= c;
        return *this;
    }

    CMatrix adjoint() const {
        CMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : a_) m = std::max(m, std::abs(x));
        return m;
    }

    // y = A x, for x of matching length
    void apply(const cdouble* x, cdouble* y) const {
        for (std::size_t i = 0; i < n_; ++i) {
            cdouble acc = 0.0;
            const cdouble* row = &a_[i * n_];
            for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
            y[i] = acc;
        }
    }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        CMatrix r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            for (std::size_t k = 0; k < a.n_; ++k) {
                const cdouble aik = a(i, k);
                if (aik == cdouble{}) continue;
                const cdouble* brow = &b.a_[k * b.n_];
                cdouble* rrow = &r.a_[i * r.n_];
                for (std::size_t j = 0; j < a.n_; ++j) rrow[j] += aik * brow[j];
            }
        }
        return r;
    }

private:
    std::size_t n_ = 0;
    std::vector<cdouble> a_;
};

inline double max_row_sum_norm(const CMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) s += std::abs(a(i, j));
        m = std::max(m, s);
    }
    return m;
}

// exp(A) by scaling-and-squaring with a Taylor series run to machine
// precision.  Accurate to ~1e-15 relative for the well-scaled arguments
// the propagator feeds it.
inline CMatrix expm(const CMatrix& a) {
    const std::size_t n = a.size();
    const double norm = max_row_sum_norm(a);
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));

    CMatrix b = a;
    b *= std::pow(2.0, -squarings);

    CMatrix result = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = term * b;
        term *= cdouble(1.0 / k, 0.0);
        result += term;
        if (term.max_abs() < 1e-17 * (1.0 + result.max_abs())) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

// exp(-i H dt) for Hermitian H (entries in rad/s, dt in s).
inline CMatrix unitary_propagator(const CMatrix& h, double dt) {
    CMatrix a = h;
    a *= cdouble(0.0, -dt);
    return expm(a);
}

// max |(U^dag U - I)_{ij}|
inline double unitarity_defect(const CMatrix& u) {
    CMatrix p = u.adjoint() * u;
    for (std::size_t i = 0; i < p.size(); ++i) p(i, i) -= 1.0;
    return p.max_abs();
}

}  // namespace ionpulse
