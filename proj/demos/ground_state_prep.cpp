// Run both cooling stages back to back: Doppler cooling down to the recoil
// scale, then the sideband ladder to the motional ground state.

#include <cstdio>

#include "ionpulse/ionpulse.hpp"

using namespace ionpulse;

int main() {
    DopplerParams p;  // Ca-40, 397 nm
    const double v_r = recoil_terminal_speed(p);
    p.gamma_linewidth = 20.0 * p.wavevector_k * v_r;
    p.detuning_delta = 10.0 * p.wavevector_k * v_r;
    p.initial_speed = 50.0 * v_r;  // ~1.26 m/s, a freshly ionized atom
    p.seed = 1;

    const CoolingTrajectory traj = doppler_mc_run(p, 20000);
    std::printf("Doppler stage: %zu events, |v| %.4g -> %.4g m/s (recoil speed %.4g m/s)\n",
                traj.events.size(), p.initial_speed, std::abs(traj.final_velocity), v_r);

    ChainSpec spec;
    spec.n_ions = 1;
    const int n0 = 10;  // typical occupancy after Doppler cooling
    const auto cycles = sideband_cool(spec, n0);
    std::printf("Sideband stage from |g,%d>:\n", n0);
    for (std::size_t k = 0; k < cycles.size(); ++k)
        std::printf("  cycle %2zu: pi pulse on n=%2d for %.3e s\n", k + 1, cycles[k].n_before,
                    cycles[k].pulse_time);
    std::printf("ground-state fidelity: %.12f after %zu cycles\n",
                fidelity(cycles.back().state_after_decay, new_ground(spec)), cycles.size());
    return 0;
}
