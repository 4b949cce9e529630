// Abstract gate set lowered by the compiler: general 1-qubit rotations plus
// the fixed two-ion gates the pulse recipes exist for.

#pragma once

#include <string>

#include "ionpulse/chain_spec.hpp"
#include "ionpulse/pulses.hpp"

namespace ionpulse {

struct Gate {
    enum class Kind { Rot, H, X, Z, CZ, CNOT, BellPrep };

    Kind kind = Kind::H;
    int a = 0;           // target ion, or control for CZ/CNOT, or first Bell ion
    int b = -1;          // second ion for two-ion gates
    double theta = 0.0;  // Rot only
    double phi = 0.0;    // Rot only

    static Gate rot(int ion, double theta, double phi) {
        return {Kind::Rot, ion, -1, normalize_angle(theta), normalize_angle(phi)};
    }
    static Gate h(int ion) { return {Kind::H, ion}; }
    static Gate x(int ion) { return {Kind::X, ion}; }
    static Gate z(int ion) { return {Kind::Z, ion}; }
    static Gate cz(int control, int target) { return {Kind::CZ, control, target}; }
    static Gate cnot(int control, int target) { return {Kind::CNOT, control, target}; }
    static Gate bell(int ion_a, int ion_b) { return {Kind::BellPrep, ion_a, ion_b}; }

    bool two_ion() const {
        return kind == Kind::CZ || kind == Kind::CNOT || kind == Kind::BellPrep;
    }

    bool operator==(const Gate&) const = default;
};

inline void validate_gate(const ChainSpec& spec, const Gate& g) {
    auto check_ion = [&](int ion) {
        if (ion < 0 || ion >= spec.n_ions)
            throw ValidationError("gate references ion " + std::to_string(ion) + " but chain has " +
                                  std::to_string(spec.n_ions) + " ions");
    };
    check_ion(g.a);
    if (g.two_ion()) {
        check_ion(g.b);
        if (g.a == g.b) throw ValidationError("control equals target");
    }
}

}  // namespace ionpulse
