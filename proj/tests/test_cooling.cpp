#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "ionpulse/cooling.hpp"

using namespace ionpulse;
using Catch::Approx;
using std::numbers::pi;

namespace {

DopplerParams test_params() {
    DopplerParams p;  // Ca-40 at 397 nm defaults
    const double v_r = recoil_terminal_speed(p);
    p.gamma_linewidth = 20.0 * p.wavevector_k * v_r;
    p.detuning_delta = 10.0 * p.wavevector_k * v_r;
    p.initial_speed = 50.0 * v_r;
    p.seed = 1;
    return p;
}

ChainSpec cooling_spec(int d = 20) {
    ChainSpec s;
    s.n_ions = 1;
    s.fock_cutoff = d;
    return s;
}

}  // namespace

TEST_CASE("mean_energy_step") {
    const DopplerParams p = test_params();
    const double recoil_energy_2 = hbar * hbar * p.wavevector_k * p.wavevector_k / p.mass;

    SECTION("v = 0: pure recoil heating") {
        CHECK(mean_energy_step(0.0, p) == Approx(recoil_energy_2).epsilon(1e-12));
        CHECK(mean_energy_step(0.0, p) > 0.0);
    }
    SECTION("counter-propagating at twice the recoil speed cools by one recoil unit") {
        const double v = 2.0 * hbar * p.wavevector_k / p.mass;
        CHECK(mean_energy_step(v, p) == Approx(-recoil_energy_2).epsilon(1e-12));
    }
    SECTION("cooling boundary at the recoil speed") {
        const double v = hbar * p.wavevector_k / p.mass;
        CHECK(mean_energy_step(v, p) == Approx(0.0).margin(1e-12 * recoil_energy_2));
    }
    SECTION("strictly negative iff counter-propagating above the recoil speed") {
        for (double mass : {0.5 * p.mass, p.mass, 3.0 * p.mass}) {
            for (double k : {0.5 * p.wavevector_k, p.wavevector_k, 2.0 * p.wavevector_k}) {
                DopplerParams q = p;
                q.mass = mass;
                q.wavevector_k = k;
                const double v_r = recoil_terminal_speed(q);
                for (double scale : {-3.0, -1.5, -0.5, 0.5, 0.9, 1.0, 1.1, 4.0}) {
                    const double v = scale * v_r;
                    const bool cools = mean_energy_step(v, q) < 0.0;
                    CHECK(cools == (v > v_r));
                }
            }
        }
    }
}

TEST_CASE("recoil_terminal_speed") {
    DopplerParams p = test_params();
    const double base = recoil_terminal_speed(p);

    SECTION("linear in k, inverse in mass") {
        DopplerParams q = p;
        q.wavevector_k *= 2.0;
        CHECK(recoil_terminal_speed(q) == Approx(2.0 * base).epsilon(1e-12));
        q = p;
        q.mass *= 2.0;
        CHECK(recoil_terminal_speed(q) == Approx(0.5 * base).epsilon(1e-12));
    }
    SECTION("mean step vanishes exactly at the terminal speed") {
        CHECK(mean_energy_step(recoil_terminal_speed(p), p) ==
              Approx(0.0).margin(1e-12 * hbar * hbar * p.wavevector_k * p.wavevector_k / p.mass));
    }
}

TEST_CASE("doppler_mc_run") {
    const DopplerParams p = test_params();

    SECTION("deterministic given the seed") {
        const CoolingTrajectory a = doppler_mc_run(p, 500);
        const CoolingTrajectory b = doppler_mc_run(p, 500);
        REQUIRE(a.events.size() == b.events.size());
        for (std::size_t i = 0; i < a.events.size(); ++i) {
            CHECK(a.events[i].velocity == b.events[i].velocity);
            CHECK(a.events[i].type == b.events[i].type);
        }
        CHECK(cooling_trajectory_csv(a) == cooling_trajectory_csv(b));
    }
    SECTION("records are consistent: E = m v^2 / 2, alternating types") {
        const CoolingTrajectory t = doppler_mc_run(p, 400);
        REQUIRE(!t.events.empty());
        for (std::size_t i = 0; i < t.events.size(); ++i) {
            const auto& e = t.events[i];
            CHECK(e.index == i);
            CHECK(e.kinetic_energy ==
                  Approx(0.5 * p.mass * e.velocity * e.velocity).epsilon(1e-12));
            CHECK(e.type == (i % 2 == 0 ? CoolingEventType::Absorb : CoolingEventType::Emit));
        }
    }
    SECTION("ensemble stagnates at the recoil scale") {
        const double v_r = recoil_terminal_speed(p);
        double sum_speed = 0.0;
        for (int seed = 0; seed < 100; ++seed) {
            DopplerParams q = p;
            q.seed = seed;
            sum_speed += std::abs(doppler_mc_run(q, 20000).final_velocity);
        }
        CHECK(sum_speed / 100.0 <= 3.0 * v_r);
    }
    SECTION("fast co-propagating ion cannot absorb") {
        DopplerParams q = p;
        q.initial_speed = -60.0 * recoil_terminal_speed(p);  // moving with the beam
        const CoolingTrajectory t = doppler_mc_run(q, 1000);
        CHECK(t.events.empty());
        CHECK(t.stagnated);
        CHECK(t.final_velocity == q.initial_speed);
    }
    SECTION("parameter validation") {
        DopplerParams q = p;
        q.detuning_delta = -1.0;
        CHECK_THROWS_AS(doppler_mc_run(q, 10), ValidationError);
        q = p;
        q.gamma_linewidth = 0.0;
        CHECK_THROWS_AS(doppler_mc_run(q, 10), ValidationError);
    }
}

TEST_CASE("pi_pulse_time") {
    ChainSpec spec = cooling_spec();
    spec.eta = 0.1;
    spec.omega_rabi = 2.0 * pi * 1e5;

    SECTION("n = 1 gives pi / (eta Omega); the quoted numbers give 5.0e-5 s") {
        CHECK(pi_pulse_time(1, spec) == Approx(pi / (spec.eta * spec.omega_rabi)).epsilon(1e-14));
        CHECK(pi_pulse_time(1, spec) == Approx(5.0e-5).epsilon(1e-12));
    }
    SECTION("n = 4 is half the n = 1 time") {
        CHECK(pi_pulse_time(4, spec) == Approx(0.5 * pi_pulse_time(1, spec)).epsilon(1e-14));
    }
    SECTION("round-trip identity t * eta * Omega * sqrt(n) = pi") {
        for (int n : {1, 2, 3, 7, 15})
            CHECK(pi_pulse_time(n, spec) * spec.eta * spec.omega_rabi * std::sqrt(double(n)) ==
                  Approx(pi).epsilon(1e-12));
    }
    SECTION("n must be positive") { CHECK_THROWS_AS(pi_pulse_time(0, spec), ValidationError); }
}

TEST_CASE("sideband_cool") {
    const ChainSpec spec = cooling_spec();

    SECTION("n0 = 10 reaches the ground state in exactly 10 cycles") {
        const auto cycles = sideband_cool(spec, 10);
        REQUIRE(cycles.size() == 10);
        CHECK(fidelity(cycles.back().state_after_decay, new_ground(spec)) ==
              Approx(1.0).margin(1e-10));
    }
    SECTION("n0 = 1 takes one cycle") {
        const auto cycles = sideband_cool(spec, 1);
        REQUIRE(cycles.size() == 1);
        CHECK(fidelity(cycles[0].state_after_decay, new_ground(spec)) ==
              Approx(1.0).margin(1e-12));
    }
    SECTION("pulse times walk down the ladder and grow each cycle") {
        const int n0 = 10;
        const auto cycles = sideband_cool(spec, n0);
        for (std::size_t k = 0; k < cycles.size(); ++k) {
            const int n = n0 - static_cast<int>(k);
            CHECK(cycles[k].n_before == n);
            CHECK(cycles[k].pulse_time == Approx(pi_pulse_time(n, spec)).epsilon(1e-14));
            if (k > 0) CHECK(cycles[k].pulse_time > cycles[k - 1].pulse_time);
        }
    }
    SECTION("norm conserved and phonon expectation drops by one per cycle") {
        const int n0 = 8;
        const auto cycles = sideband_cool(spec, n0);
        for (std::size_t k = 0; k < cycles.size(); ++k) {
            const auto& s = cycles[k].state_after_decay;
            CHECK(std::abs(s.norm() - 1.0) < 1e-10);
            const auto dist = phonon_distribution(s);
            double mean_n = 0.0;
            for (std::size_t n = 0; n < dist.size(); ++n) mean_n += double(n) * dist[n];
            CHECK(mean_n == Approx(double(n0 - 1 - k)).margin(1e-9));
        }
    }
    SECTION("n0 out of range") {
        CHECK_THROWS_AS(sideband_cool(spec, 0), ValidationError);
        CHECK_THROWS_AS(sideband_cool(spec, spec.fock_cutoff), ValidationError);
    }
    SECTION("csv log") {
        const auto cycles = sideband_cool(spec, 2);
        const std::string csv = sideband_log_csv(cycles, spec);
        CHECK(csv.starts_with("cycle,n_before,pulse_time_s,fidelity_ground\n"));
        CHECK(csv.find("1,2,") != std::string::npos);
        CHECK(csv.find("2,1,") != std::string::npos);
    }
    SECTION("decay heating keeps the ladder but needs more cycles") {
        const auto cycles = sideband_cool(spec, 3, 0.5, 99);
        CHECK(cycles.size() >= 3);
        CHECK(fidelity(cycles.back().state_after_decay, new_ground(spec)) ==
              Approx(1.0).margin(1e-10));
    }
}
