// Two-stage preparation of the motional ground state.
//
// Doppler stage: a classical 1D ion in a single red-detuned beam travelling
// along -z.  The mean-step energy balance Delta E = hbar v.k + hbar^2 k^2 / M
// gives the recoil limit hbar k / M; the Monte Carlo realizes the same
// kinematics with discrete momentum kicks.  Absorption is gated on the
// Doppler condition (only ions moving against the beam can absorb) and,
// within that, accepted against a Lorentzian of FWHM Gamma centred on the
// detuned resonance.
//
// Sideband stage: the quantum |g,n> -> |e,n-1> -> |g,n-1> ladder with exact
// pi pulses of duration pi / (eta Omega sqrt(n)) and an idealized projective
// decay.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ionpulse/hybrid_state.hpp"
#include "ionpulse/pulses.hpp"
#include "ionpulse/rng.hpp"

namespace ionpulse {

constexpr double hbar = 1.054571817e-34;  // J s

struct DopplerParams {
    double mass = 6.6359e-26;           // kg (Ca-40)
    double wavevector_k = 1.5826e7;     // rad/m magnitude; beam along -z
    double gamma_linewidth = 0.0;       // rad/s, Lorentzian FWHM
    double detuning_delta = 0.0;        // rad/s, omega_abs = omega_0 - delta, > 0
    double initial_speed = 0.0;         // m/s, signed; +z moves against the beam
    std::uint64_t seed = 0;
};

inline void validate_doppler(const DopplerParams& p) {
    if (!(p.mass > 0.0)) throw ValidationError("mass must be positive");
    if (!(p.wavevector_k > 0.0)) throw ValidationError("wavevector_k must be positive");
    if (!(p.gamma_linewidth > 0.0)) throw ValidationError("gamma_linewidth must be positive");
    if (!(p.detuning_delta > 0.0))
        throw ValidationError("detuning_delta must be positive (red-detuned laser)");
}

// Mean kinetic-energy change per absorption-emission cycle,
// hbar v.k + hbar^2 k^2 / M.  With the beam along -z, v.k = -v k, so a
// counter-propagating ion (v > 0) has v.k < 0 and cools while
// |v| > hbar k / M.
inline double mean_energy_step(double v, const DopplerParams& p) {
    const double v_dot_k = -v * p.wavevector_k;
    return hbar * v_dot_k + hbar * hbar * p.wavevector_k * p.wavevector_k / p.mass;
}

// Speed below which the mean step no longer cools.
inline double recoil_terminal_speed(const DopplerParams& p) {
    return hbar * p.wavevector_k / p.mass;
}

enum class CoolingEventType { Absorb, Emit };

struct CoolingEvent {
    std::size_t index;
    double velocity;        // m/s, after the kick
    double kinetic_energy;  // J
    CoolingEventType type;
};

struct CoolingTrajectory {
    std::vector<CoolingEvent> events;
    double final_velocity = 0.0;
    std::size_t attempts = 0;
    bool stagnated = false;  // stopped on 1000 consecutive rejections
};

// Absorption acceptance at signed velocity v: zero unless the ion moves
// against the beam (the Doppler condition -- a red-detuned photon can only
// be shifted into resonance by opposing motion), else the Lorentzian
// L(omega_abs - omega_0 - k.v) with FWHM Gamma.
inline double absorption_probability(double v, const DopplerParams& p) {
    const double v_dot_k = -v * p.wavevector_k;
    if (v_dot_k >= 0.0) return 0.0;
    const double x = -p.detuning_delta - v_dot_k;
    const double r = 2.0 * x / p.gamma_linewidth;
    return 1.0 / (1.0 + r * r);
}

// Absorption-emission Monte Carlo.  Each loop iteration attempts one
// absorption; an accepted attempt records two events: the directed absorb
// kick -hbar k / M and an emission kick (hbar k / M) u with u uniform on
// [-1, 1] (isotropic 3D emission projected on z).  Runs until max_events
// recorded events or 1000 consecutive rejected attempts.
inline CoolingTrajectory doppler_mc_run(const DopplerParams& p, std::size_t max_events) {
    validate_doppler(p);
    if (max_events < 1) throw ValidationError("max_events must be >= 1");

    const double v_recoil = recoil_terminal_speed(p);
    auto rng = make_stream(p.seed);
    CoolingTrajectory traj;
    double v = p.initial_speed;
    std::size_t consecutive_rejects = 0;

    auto record = [&](CoolingEventType type) {
        traj.events.push_back(
            {traj.events.size(), v, 0.5 * p.mass * v * v, type});
    };

    while (traj.events.size() < max_events) {
        if (consecutive_rejects >= 1000) {
            traj.stagnated = true;
            break;
        }
        ++traj.attempts;
        const double accept = absorption_probability(v, p);
        if (accept > 0.0 && uniform01(rng) < accept) {
            consecutive_rejects = 0;
            v -= v_recoil;  // photon momentum along the beam (-z)
            record(CoolingEventType::Absorb);
            if (traj.events.size() >= max_events) break;
            const double u = 2.0 * uniform01(rng) - 1.0;
            v += v_recoil * u;
            record(CoolingEventType::Emit);
        } else {
            ++consecutive_rejects;
        }
    }
    traj.final_velocity = v;
    return traj;
}

inline std::string cooling_trajectory_csv(const CoolingTrajectory& traj) {
    std::string out = "event,velocity_m_s,energy_J,type\n";
    char buf[96];
    for (const auto& e : traj.events) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%s\n", e.index, e.velocity,
                      e.kinetic_energy, e.type == CoolingEventType::Absorb ? "absorb" : "emit");
        out += buf;
    }
    return out;
}

// Kinetic pseudo-temperature via (3/2) k_B T = E_K.
inline double kinetic_pseudo_temperature(double kinetic_energy) {
    constexpr double k_boltzmann = 1.380649e-23;
    return 2.0 * kinetic_energy / (3.0 * k_boltzmann);
}

// ---------------------------------------------------------------------------
// Sideband cooling

// Duration of the red-sideband pi pulse that empties |g,n>.
inline double pi_pulse_time(int n, const ChainSpec& spec) {
    if (n < 1) throw ValidationError("pi_pulse_time: n must be >= 1");
    if (!(spec.eta > 0.0)) throw ValidationError("pi_pulse_time: eta must be positive");
    return std::numbers::pi / (spec.eta * spec.omega_rabi * std::sqrt(double(n)));
}

struct SidebandCycle {
    int n_before;
    double pulse_time;  // s
    HybridState state_after_decay;
};

// |g,n0> -> ... -> |g,0> by alternating exact red-sideband pi pulses and a
// projective decay |e,m> -> |g,m> (amplitude transferred, phase reset).
// With heating_probability = 0 this takes exactly n0 cycles; a nonzero value
// makes each decay deposit one quantum back with that probability, modelling
// recoil on emission.
inline std::vector<SidebandCycle> sideband_cool(const ChainSpec& spec, int n0,
                                                double heating_probability = 0.0,
                                                std::uint64_t seed = 0) {
    validate_spec(spec);
    if (n0 < 1 || n0 >= spec.fock_cutoff)
        throw ValidationError("sideband_cool: n0 must satisfy 1 <= n0 < fock_cutoff");
    if (heating_probability < 0.0 || heating_probability >= 1.0)
        throw ValidationError("sideband_cool: heating probability must be in [0, 1)");

    auto rng = make_stream(seed);
    HybridState state(spec);
    state[state.flat_index(0, n0)] = 1.0;  // |g...g, n0>

    std::vector<SidebandCycle> cycles;
    int n = n0;
    const int max_cycles = 10 * n0 + 10;
    while (n >= 1 && static_cast<int>(cycles.size()) < max_cycles) {
        const double t = pi_pulse_time(n, spec);
        // referenced area eta*Omega*t = pi/sqrt(n); the internal sqrt(n)
        // ladder factor makes the (g,n)<->(e,n-1) rotation an exact pi.
        apply_red_sideband(state, 0, spec.eta * spec.omega_rabi * t, std::numbers::pi / 2.0);

        // projective decay of the excited ion: magnitudes move to g,
        // phases drop
        const int d = spec.fock_cutoff;
        const int mask = spec.ion_bit(0);
        bool heated = heating_probability > 0.0 && uniform01(rng) < heating_probability;
        for (int bits = 0; bits < spec.atom_dim(); ++bits) {
            if (!(bits & mask)) continue;
            for (int m = d - 1; m >= 0; --m) {
                const std::size_t ie = state.flat_index(bits, m);
                if (state[ie] == cdouble{}) continue;
                const int m_after = heated ? std::min(m + 1, d - 1) : m;
                const std::size_t ig = state.flat_index(bits & ~mask, m_after);
                const double mag =
                    std::sqrt(std::norm(state[ig]) + std::norm(state[ie]));
                state[ig] = mag;
                state[ie] = 0.0;
            }
        }
        cycles.push_back({n, t, state});
        n = heated ? n : n - 1;
    }
    return cycles;
}

inline std::string sideband_log_csv(const std::vector<SidebandCycle>& cycles,
                                    const ChainSpec& spec) {
    const HybridState ground = new_ground(spec);
    std::string out = "cycle,n_before,pulse_time_s,fidelity_ground\n";
    char buf[96];
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g,%.17g\n", i + 1, cycles[i].n_before,
                      cycles[i].pulse_time, fidelity(cycles[i].state_after_decay, ground));
        out += buf;
    }
    return out;
}

}  // namespace ionpulse
