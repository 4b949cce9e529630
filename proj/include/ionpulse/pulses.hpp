// Analytic resonant pulse unitaries: carrier, red/blue sideband and the
// auxiliary-level blue sideband used by the CZ construction.
//
// All four reduce to the same 2x2 rotation
//
//   U(beta, phi) = [ cos(beta/2)              -i e^{-i phi} sin(beta/2) ]
//                  [ -i e^{i phi} sin(beta/2)  cos(beta/2)              ]
//
// written on the (lower, upper) basis pair the resonance connects, with the
// g-state first: {|g,n>,|e,n>} carrier, {|g,n>,|e,n-1>} red sideband,
// {|g,n>,|e,n+1>} blue sideband.  `beta` is the n = 1 referenced pulse area
// (Omega t for the carrier, eta Omega t for sidebands); the ladder factors
// sqrt(n) / sqrt(n+1) are applied internally.  `phase` is the angle that
// literally appears in the matrix: the lab phase phi for the carrier and
// phi-tilde = phi + pi/2 for sidebands.

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "ionpulse/hybrid_state.hpp"

namespace ionpulse {

enum class PulseKind { Carrier, RedSideband, BlueSideband, AuxBlueSideband };

inline const char* pulse_kind_name(PulseKind k) {
    switch (k) {
        case PulseKind::Carrier: return "CARRIER";
        case PulseKind::RedSideband: return "RSB";
        case PulseKind::BlueSideband: return "BSB";
        case PulseKind::AuxBlueSideband: return "AUXBSB";
    }
    return "?";
}

constexpr double two_pi = 2.0 * std::numbers::pi;

// Amplitude magnitude above which the top Fock level counts as populated.
constexpr double truncation_guard = 1e-8;

inline double normalize_angle(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

struct PulseInstruction {
    PulseKind kind = PulseKind::Carrier;
    int ion = 0;
    double beta = 0.0;   // pulse area, radians (kept unreduced: 2*pi is not 0)
    double phase = 0.0;  // phi (carrier) or phi-tilde (sidebands), radians

    PulseInstruction normalized() const {
        PulseInstruction p = *this;
        p.phase = normalize_angle(phase);
        return p;
    }

    bool operator==(const PulseInstruction&) const = default;
};

inline void validate_instruction(const ChainSpec& spec, const PulseInstruction& p) {
    if (p.ion < 0 || p.ion >= spec.n_ions)
        throw ValidationError("pulse targets ion " + std::to_string(p.ion) + " but chain has " +
                              std::to_string(spec.n_ions) + " ions");
    if (!std::isfinite(p.beta) || !std::isfinite(p.phase))
        throw ValidationError("pulse area and phase must be finite");
    if (p.kind == PulseKind::AuxBlueSideband) {
        const double m = std::round(p.beta / two_pi);
        if (std::abs(p.beta - m * two_pi) > 1e-9)
            throw ValidationError("auxiliary blue sideband requires beta = 2*pi*m");
    }
}

inline Mat2 pulse_matrix(double beta, double phase) {
    const double c = std::cos(beta / 2.0);
    const double s = std::sin(beta / 2.0);
    const cdouble mi(0.0, -1.0);
    return {cdouble(c, 0.0), mi * std::exp(cdouble(0.0, -phase)) * s,
            mi * std::exp(cdouble(0.0, phase)) * s, cdouble(c, 0.0)};
}

// Carrier 2x2 on {|g,n>, |e,n>}; beta = Omega t.
inline Mat2 carrier_unitary(double beta, double phase) { return pulse_matrix(beta, phase); }

namespace detail {

inline void rotate_pair_raw(cdouble* amp, std::size_t i, std::size_t j, const Mat2& u) {
    const cdouble ai = amp[i], aj = amp[j];
    amp[i] = u[0] * ai + u[1] * aj;
    amp[j] = u[2] * ai + u[3] * aj;
}

// Shared pair-loop over all configurations of the non-target ions.
// `guard` enables the Fock-truncation checks (state path); the matrix
// oracle path runs without them and realizes the formal truncated-space
// unitary, which fixes unpaired basis states.
template <typename PairFn>
inline void for_each_spectator(const ChainSpec& spec, int ion, PairFn&& fn) {
    const int mask = spec.ion_bit(ion);
    const int atoms = spec.atom_dim();
    for (int bits = 0; bits < atoms; ++bits) {
        if (bits & mask) continue;
        fn(bits, bits | mask);
    }
}

inline void apply_carrier_raw(const ChainSpec& spec, cdouble* amp, int ion, double beta,
                              double phase) {
    const Mat2 u = pulse_matrix(beta, phase);
    const int d = spec.fock_cutoff;
    for_each_spectator(spec, ion, [&](int g_bits, int e_bits) {
        for (int n = 0; n < d; ++n)
            rotate_pair_raw(amp, static_cast<std::size_t>(g_bits) * d + n,
                            static_cast<std::size_t>(e_bits) * d + n, u);
    });
}

// Pairs (|g,n>, |e,n-1>), effective area beta*sqrt(n).  |g,0> has no
// partner (a|0> = 0) and |e,d-1> would pair with |g,d>; both stay fixed.
inline void apply_rsb_raw(const ChainSpec& spec, cdouble* amp, int ion, double beta,
                          double phase) {
    const int d = spec.fock_cutoff;
    for (int n = 1; n < d; ++n) {
        const Mat2 u = pulse_matrix(beta * std::sqrt(double(n)), phase);
        for_each_spectator(spec, ion, [&](int g_bits, int e_bits) {
            rotate_pair_raw(amp, static_cast<std::size_t>(g_bits) * d + n,
                            static_cast<std::size_t>(e_bits) * d + (n - 1), u);
        });
    }
}

// Pairs (|g,n>, |e,n+1>), effective area beta*sqrt(n+1); |e,0> is unpaired.
inline void apply_bsb_raw(const ChainSpec& spec, cdouble* amp, int ion, double beta,
                          double phase, bool guard) {
    const int d = spec.fock_cutoff;
    if (guard) {
        // |g,d-1> couples to |e,d>, outside the stored space.
        for_each_spectator(spec, ion, [&](int g_bits, int) {
            if (std::abs(amp[static_cast<std::size_t>(g_bits) * d + (d - 1)]) > truncation_guard)
                throw TruncationError(
                    "blue sideband would drive population beyond the Fock cutoff (|g," +
                    std::to_string(d - 1) + "> occupied); raise fock_cutoff");
        });
    }
    for (int n = 0; n + 1 < d; ++n) {
        const Mat2 u = pulse_matrix(beta * std::sqrt(double(n + 1)), phase);
        for_each_spectator(spec, ion, [&](int g_bits, int e_bits) {
            const std::size_t ig = static_cast<std::size_t>(g_bits) * d + n;
            const std::size_t ie = static_cast<std::size_t>(e_bits) * d + (n + 1);
            rotate_pair_raw(amp, ig, ie, u);
            // Keep the top level a clean guard band so later sideband
            // pulses cannot silently clip.
            if (guard && n + 1 == d - 1 && std::abs(amp[ie]) > truncation_guard)
                throw TruncationError("blue sideband placed amplitude on the top Fock level " +
                                      std::to_string(d - 1) + "; raise fock_cutoff");
        });
    }
}

// Closed 2*pi*m Rabi cycle through the auxiliary level |e~,0>: every
// component with the target ion excited and exactly one phonon picks up
// (-1)^m.  The auxiliary level itself is never stored.
inline void apply_aux_raw(const ChainSpec& spec, cdouble* amp, int ion, double beta) {
    const long long m = std::llround(beta / two_pi);
    if (std::abs(beta - double(m) * two_pi) > 1e-9)
        throw ValidationError("auxiliary blue sideband requires beta = 2*pi*m");
    if (m % 2 == 0) return;
    const int d = spec.fock_cutoff;
    for_each_spectator(spec, ion, [&](int, int e_bits) {
        amp[static_cast<std::size_t>(e_bits) * d + 1] = -amp[static_cast<std::size_t>(e_bits) * d + 1];
    });
}

inline void apply_pulse_raw(const ChainSpec& spec, cdouble* amp, const PulseInstruction& p,
                            bool guard) {
    validate_instruction(spec, p);
    switch (p.kind) {
        case PulseKind::Carrier: apply_carrier_raw(spec, amp, p.ion, p.beta, p.phase); break;
        case PulseKind::RedSideband: apply_rsb_raw(spec, amp, p.ion, p.beta, p.phase); break;
        case PulseKind::BlueSideband: apply_bsb_raw(spec, amp, p.ion, p.beta, p.phase, guard); break;
        case PulseKind::AuxBlueSideband: apply_aux_raw(spec, amp, p.ion, p.beta); break;
    }
}

}  // namespace detail

inline void apply_carrier(HybridState& s, int ion, double beta, double phase) {
    validate_instruction(s.spec(), {PulseKind::Carrier, ion, beta, phase});
    detail::apply_carrier_raw(s.spec(), s.amplitudes().data(), ion, beta, phase);
}

inline void apply_red_sideband(HybridState& s, int ion, double beta, double phase) {
    validate_instruction(s.spec(), {PulseKind::RedSideband, ion, beta, phase});
    detail::apply_rsb_raw(s.spec(), s.amplitudes().data(), ion, beta, phase);
}

inline void apply_blue_sideband(HybridState& s, int ion, double beta, double phase) {
    validate_instruction(s.spec(), {PulseKind::BlueSideband, ion, beta, phase});
    detail::apply_bsb_raw(s.spec(), s.amplitudes().data(), ion, beta, phase, true);
}

inline void apply_aux_blue_sideband(HybridState& s, int ion, double beta) {
    detail::apply_aux_raw(s.spec(), s.amplitudes().data(), ion, beta);
}

inline void apply_pulse(HybridState& s, const PulseInstruction& p) {
    detail::apply_pulse_raw(s.spec(), s.amplitudes().data(), p, true);
}

}  // namespace ionpulse
