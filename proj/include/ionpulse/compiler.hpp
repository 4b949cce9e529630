// Gate -> pulse lowering, schedule application and whole-schedule unitary
// reconstruction.
//
// Schedules are chronological: pulses[0] fires first.  Operator products in
// the usual right-to-left notation therefore read the list back to front.
//
// Lowering recipes (beta, phase as stored in the 2x2 pulse matrix):
//   Rot(theta, phi)  -> CARRIER(theta, phi + pi/2); maps |0> to
//                       cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> exactly.
//   H                -> CARRIER(pi/2, pi/2), CARRIER(pi, pi); equals i*H.
//   X                -> CARRIER(pi, 0) = -i sigma_x.
//   Z                -> CARRIER(pi, pi/2), CARRIER(pi, 0) = -i sigma_z.
//   CZ(c, t)         -> RSB(t, pi, 3pi/2), AUXBSB(c, 2pi), RSB(t, pi, pi/2);
//                       exactly diag(1,1,1,-1) on phonon-0 inputs.
//   CNOT(c, t)       -> H(t) CZ(c,t) H(t), 7 pulses.
//   BellPrep(a, b)   -> H(a) CNOT(a,b), 9 pulses.

#pragma once

#include <cstddef>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "ionpulse/cmatrix.hpp"
#include "ionpulse/gates.hpp"
#include "ionpulse/hybrid_state.hpp"
#include "ionpulse/pulses.hpp"

namespace ionpulse {

// Population the shared mode must have in |0> where a lowering assumes a
// ground-state vibrational qubit.
constexpr double ground_phonon_threshold = 1.0 - 1e-9;

struct PulseSchedule {
    std::vector<PulseInstruction> pulses;
    // Pulse indices at which the shared mode must be in |0> (start of each
    // CZ block).  In-memory only; the text format carries pulses alone.
    std::vector<std::size_t> ground_phonon_checks;
    std::string source;            // e.g. the circuit line(s) this came from
    std::string spec_fingerprint;  // hash of the ChainSpec it was lowered for

    std::size_t size() const { return pulses.size(); }

    PulseSchedule& operator+=(const PulseSchedule& o) {
        const std::size_t base = pulses.size();
        pulses.insert(pulses.end(), o.pulses.begin(), o.pulses.end());
        for (auto c : o.ground_phonon_checks) ground_phonon_checks.push_back(base + c);
        return *this;
    }

    bool operator==(const PulseSchedule& o) const { return pulses == o.pulses; }
};

// FNV-1a over the fields that determine lowering validity.
inline std::string spec_fingerprint(const ChainSpec& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    };
    mix(static_cast<std::uint64_t>(s.n_ions));
    mix(static_cast<std::uint64_t>(s.fock_cutoff));
    double fields[3] = {s.omega_z, s.eta, s.omega_rabi};
    for (double f : fields) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(f));
        __builtin_memcpy(&bits, &f, sizeof(bits));
        mix(bits);
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline PulseSchedule compile_rotation(int ion, double theta, double phi) {
    constexpr double pi = std::numbers::pi;
    PulseSchedule s;
    s.pulses.push_back(
        PulseInstruction{PulseKind::Carrier, ion, theta, normalize_angle(phi + pi / 2.0)});
    return s;
}

inline PulseSchedule compile_hadamard(int ion) {
    constexpr double pi = std::numbers::pi;
    PulseSchedule s;
    s.pulses.push_back(PulseInstruction{PulseKind::Carrier, ion, pi / 2.0, pi / 2.0});
    s.pulses.push_back(PulseInstruction{PulseKind::Carrier, ion, pi, pi});
    return s;
}

inline PulseSchedule compile_x(int ion) {
    constexpr double pi = std::numbers::pi;
    return compile_rotation(ion, pi, 3.0 * pi / 2.0);
}

inline PulseSchedule compile_z(int ion) {
    constexpr double pi = std::numbers::pi;
    PulseSchedule s;
    s.pulses.push_back(PulseInstruction{PulseKind::Carrier, ion, pi, pi / 2.0});
    s.pulses.push_back(PulseInstruction{PulseKind::Carrier, ion, pi, 0.0});
    return s;
}

// Atomic <-> vibrational swap: |e,0> -> |g,1>, |g,1> -> -|e,0>.  The
// inverse flips the sideband phase from 3pi/2 to pi/2.
inline PulseSchedule compile_swap_av(int ion, bool inverse = false) {
    constexpr double pi = std::numbers::pi;
    PulseSchedule s;
    s.pulses.push_back(
        PulseInstruction{PulseKind::RedSideband, ion, pi, inverse ? pi / 2.0 : 3.0 * pi / 2.0});
    return s;
}

// Phase gate between atomic and vibrational qubits: |e,1> -> -|e,1> via a
// closed 2*pi cycle through the auxiliary level.
inline PulseSchedule compile_cz_av(int ion) {
    PulseSchedule s;
    s.pulses.push_back(
        PulseInstruction{PulseKind::AuxBlueSideband, ion, 2.0 * std::numbers::pi, 0.0});
    return s;
}

inline PulseSchedule compile_cz(int control, int target) {
    if (control == target) throw ValidationError("control equals target");
    PulseSchedule s;
    s.ground_phonon_checks.push_back(0);  // shared mode must start in |0>
    s += compile_swap_av(target);
    s += compile_cz_av(control);
    s += compile_swap_av(target, /*inverse=*/true);
    return s;
}

inline PulseSchedule compile_cnot(int control, int target) {
    if (control == target) throw ValidationError("control equals target");
    PulseSchedule s;
    s += compile_hadamard(target);
    s += compile_cz(control, target);
    s += compile_hadamard(target);
    return s;
}

inline PulseSchedule compile_bell(int ion_a, int ion_b) {
    if (ion_a == ion_b) throw ValidationError("control equals target");
    PulseSchedule s;
    s += compile_hadamard(ion_a);
    s += compile_cnot(ion_a, ion_b);
    return s;
}

inline PulseSchedule compile_gate(const Gate& g) {
    switch (g.kind) {
        case Gate::Kind::Rot: return compile_rotation(g.a, g.theta, g.phi);
        case Gate::Kind::H: return compile_hadamard(g.a);
        case Gate::Kind::X: return compile_x(g.a);
        case Gate::Kind::Z: return compile_z(g.a);
        case Gate::Kind::CZ: return compile_cz(g.a, g.b);
        case Gate::Kind::CNOT: return compile_cnot(g.a, g.b);
        case Gate::Kind::BellPrep: return compile_bell(g.a, g.b);
    }
    throw ValidationError("unknown gate kind");
}

inline PulseSchedule compile_circuit(const ChainSpec& spec, const std::vector<Gate>& circuit) {
    validate_spec(spec);
    PulseSchedule s;
    for (const Gate& g : circuit) {
        validate_gate(spec, g);
        s += compile_gate(g);
    }
    s.spec_fingerprint = spec_fingerprint(spec);
    return s;
}

// Apply a schedule in time order.  Truncation and precondition failures are
// reported with the index of the offending pulse.
inline void apply_schedule(HybridState& s, const PulseSchedule& schedule) {
    std::size_t check_pos = 0;
    for (std::size_t k = 0; k < schedule.pulses.size(); ++k) {
        while (check_pos < schedule.ground_phonon_checks.size() &&
               schedule.ground_phonon_checks[check_pos] == k) {
            const double p0 = phonon_distribution(s)[0];
            if (p0 < ground_phonon_threshold)
                throw PhononPreconditionError(
                    "pulse " + std::to_string(k) +
                    ": CZ block requires the shared mode in |0> but ground population is " +
                    std::to_string(p0));
            ++check_pos;
        }
        try {
            apply_pulse(s, schedule.pulses[k]);
        } catch (const TruncationError& e) {
            throw TruncationError("pulse " + std::to_string(k) + ": " + e.what());
        }
    }
}

// Formal full-space unitary of one pulse on the truncated space (pairs
// rotate, unpaired basis states stay fixed; no truncation guards).
inline void apply_pulse_to_column(const ChainSpec& spec, const PulseInstruction& p,
                                  cdouble* column) {
    detail::apply_pulse_raw(spec, column, p, /*guard=*/false);
}

// Product of the per-pulse unitaries in time order, built column-wise.
inline CMatrix schedule_unitary(const ChainSpec& spec, const PulseSchedule& schedule) {
    validate_spec(spec);
    const std::size_t dim = spec.dim();
    CMatrix u(dim);
    std::vector<cdouble> col(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::fill(col.begin(), col.end(), cdouble{});
        col[j] = 1.0;
        for (const auto& p : schedule.pulses) apply_pulse_to_column(spec, p, col.data());
        for (std::size_t i = 0; i < dim; ++i) u(i, j) = col[i];
    }
    return u;
}

}  // namespace ionpulse
