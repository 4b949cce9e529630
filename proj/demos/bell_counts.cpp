// Compile a Bell-pair circuit to pulses, run it and print shot statistics.

#include <cstdio>
#include <map>

#include "ionpulse/ionpulse.hpp"

using namespace ionpulse;

int main() {
    ChainSpec spec;  // two Ca-40 ions, eta = 0.1, d = 20
    const PulseSchedule schedule = compile_circuit(spec, {Gate::bell(0, 1)});
    std::printf("Bell prep lowers to %zu pulses:\n%s\n", schedule.size(),
                serialize_schedule(schedule).c_str());

    HybridState state = new_ground(spec);
    apply_schedule(state, schedule);
    std::printf("fidelity with (|gg>+|ee>)/sqrt(2): %.12f\n", [&] {
        HybridState target(spec);
        target[target.flat_index(0b00, 0)] = std::sqrt(0.5);
        target[target.flat_index(0b11, 0)] = std::sqrt(0.5);
        return fidelity(state, target);
    }());

    const auto estimates = estimate_probabilities(sample_shots(state, 10000, 7));
    for (const auto& e : estimates)
        std::printf("pattern %s: %zu shots, p = %.4f +- %.4f\n", e.pattern.c_str(), e.count,
                    e.p_hat, e.std_error);
    return 0;
}
