// Hybrid atomic (x) vibrational state of an N-ion chain.
//
// Amplitudes live in a dense vector over the basis |a_1 ... a_N ; n> with
// g -> 0, e -> 1 and the shared phonon number n.  Atomic bits are major,
// phonon minor: flat = atomic_bits * fock_cutoff + n, so the operational
// basis |0> = |g..g,0>, |1> = |e,0> sits at low indices.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ionpulse/chain_spec.hpp"
#include "ionpulse/errors.hpp"

namespace ionpulse {

using cdouble = std::complex<double>;

// 2x2 complex matrix, row-major {m00, m01, m10, m11}.
using Mat2 = std::array<cdouble, 4>;

inline double unitarity_defect2(const Mat2& u) {
    // entries of u^dag u - I
    const cdouble a = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2] - 1.0;
    const cdouble b = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
    const cdouble c = std::conj(u[1]) * u[0] + std::conj(u[3]) * u[2];
    const cdouble d = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3] - 1.0;
    return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

class HybridState {
public:
    explicit HybridState(const ChainSpec& spec) : spec_(spec), amp_(spec.dim()) {
        validate_spec(spec);
    }

    const ChainSpec& spec() const { return spec_; }
    std::size_t dim() const { return amp_.size(); }

    cdouble& operator[](std::size_t i) { return amp_[i]; }
    const cdouble& operator[](std::size_t i) const { return amp_[i]; }
    std::vector<cdouble>& amplitudes() { return amp_; }
    const std::vector<cdouble>& amplitudes() const { return amp_; }

    std::size_t flat_index(int atomic_bits, int n) const {
        return static_cast<std::size_t>(atomic_bits) * spec_.fock_cutoff + n;
    }
    std::pair<int, int> unflatten(std::size_t flat) const {
        const int d = spec_.fock_cutoff;
        return {static_cast<int>(flat / d), static_cast<int>(flat % d)};
    }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

private:
    ChainSpec spec_;
    std::vector<cdouble> amp_;
};

// Fiducial state |g...g, 0>.
inline HybridState new_ground(const ChainSpec& spec) {
    HybridState s(spec);
    s[0] = 1.0;
    return s;
}

inline cdouble inner_product(const HybridState& a, const HybridState& b) {
    if (a.dim() != b.dim() || !a.spec().same_dimensions(b.spec()))
        throw ValidationError("inner_product: mismatched dimensions");
    cdouble acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

// |<a|b>|^2 -- symmetric and insensitive to either global phase.
inline double fidelity(const HybridState& a, const HybridState& b) {
    return std::norm(inner_product(a, b));
}

// Marginal probability of each phonon number.
inline std::vector<double> phonon_distribution(const HybridState& s) {
    const int d = s.spec().fock_cutoff;
    std::vector<double> p(d, 0.0);
    for (std::size_t i = 0; i < s.dim(); ++i) p[i % d] += std::norm(s[i]);
    return p;
}

// In-place rotation of the amplitude pair (i, j) by the 2x2 unitary u.
// This is the primitive every resonant pulse reduces to.
inline void apply_subspace_rotation(HybridState& s, std::size_t i, std::size_t j,
                                    const Mat2& u) {
    if (i == j) throw ValidationError("apply_subspace_rotation: indices must be distinct");
    if (i >= s.dim() || j >= s.dim())
        throw ValidationError("apply_subspace_rotation: index out of range");
    if (unitarity_defect2(u) > 1e-12)
        throw ValidationError("apply_subspace_rotation: matrix is not unitary");
    const cdouble ai = s[i], aj = s[j];
    s[i] = u[0] * ai + u[1] * aj;
    s[j] = u[2] * ai + u[3] * aj;
}

}  // namespace ionpulse
