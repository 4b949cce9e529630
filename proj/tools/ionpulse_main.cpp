// ionpulse command-line interface.
//
// Subcommands: compile, simulate, cool doppler, cool sideband, rwa-check,
// bell-demo.  Exit codes: 0 success, 2 parse/validation error, 3 physics
// error (Fock truncation or phonon precondition).

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ionpulse/harness.hpp"

using namespace ionpulse;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_physics = 3;

RunConfig make_config(const std::string& config_path, std::uint64_t seed, bool seed_set,
                      std::size_t shots, bool shots_set, const std::string& out_dir) {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (seed_set) cfg.seed = seed;
    if (shots_set) cfg.shots = shots;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!cfg.spec.lamb_dicke_ok())
        std::fprintf(stderr, "warning: eta = %g is outside the Lamb-Dicke regime (eta << 1)\n",
                     cfg.spec.eta);
    return cfg;
}

void print_doppler_summary(const DopplerSummary& s) {
    std::printf("terminal speed: %.6g m/s (%.3f recoil speeds, hbar*k/M = %.6g m/s)\n",
                s.terminal_speed, s.terminal_speed / s.recoil_speed, s.recoil_speed);
    std::printf("events: %zu, stagnated: %s\n", s.events, s.stagnated ? "yes" : "no");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pulse-level trapped-ion quantum computer simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::size_t shots = 0;
    bool seed_set = false, shots_set = false;
    app.add_option("--config", config_path, "JSON config file (flat snake_case keys)")
        ->envname("IONPULSE_CONFIG");
    app.add_option("--seed", seed, "base RNG seed")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--shots", shots, "number of measurement shots")
        ->each([&](const std::string&) { shots_set = true; });
    app.add_option("--out", out_dir, "output directory");

    // compile
    auto* compile_cmd = app.add_subcommand("compile", "lower a gate circuit to a pulse schedule");
    std::string circuit_path;
    compile_cmd->add_option("circuit", circuit_path, "circuit text file")->required();

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "apply a pulse schedule to |g..g,0>");
    std::string schedule_path;
    simulate_cmd->add_option("schedule", schedule_path, "schedule text file")->required();

    // cool
    auto* cool_cmd = app.add_subcommand("cool", "laser cooling simulations");
    cool_cmd->require_subcommand(1);
    auto* doppler_cmd = cool_cmd->add_subcommand("doppler", "classical Doppler cooling Monte Carlo");
    auto* sideband_cmd = cool_cmd->add_subcommand("sideband", "resolved sideband cooling ladder");

    // rwa-check
    auto* rwa_cmd = app.add_subcommand("rwa-check",
                                       "numeric vs analytic red-sideband pi pulse infidelity");
    std::vector<double> ratios{0.1, 0.05, 0.025};
    rwa_cmd->add_option("--ratios", ratios, "Omega / omega_z ratios");

    // bell-demo
    auto* bell_cmd = app.add_subcommand("bell-demo", "prepare and sample a Bell pair");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = make_config(config_path, seed, seed_set, shots, shots_set, out_dir);

        if (*compile_cmd) {
            const PulseSchedule schedule = run_compile(read_text_file(circuit_path), cfg);
            const std::string out_path = cfg.out_dir + "/schedule.txt";
            write_text_file(out_path, serialize_schedule(schedule));
            std::printf("wrote %zu pulse(s) to %s\n", schedule.size(), out_path.c_str());
        } else if (*simulate_cmd) {
            const RunRecord rec = run_simulate_files(schedule_path, cfg);
            std::printf("wrote %s/record.json\n", cfg.out_dir.c_str());
            for (std::size_t i = 0; i < rec.bright_probabilities.size(); ++i)
                std::printf("ion %zu bright probability: %.6f\n", i, rec.bright_probabilities[i]);
            for (const auto& e : rec.shot_estimates)
                std::printf("pattern %s: %zu shots, p = %.5f +- %.5f\n", e.pattern.c_str(),
                            e.count, e.p_hat, e.std_error);
        } else if (*doppler_cmd) {
            const DopplerSummary s = run_cool_doppler(cfg, cfg.out_dir + "/doppler.csv");
            print_doppler_summary(s);
            std::printf("wrote %s/doppler.csv\n", cfg.out_dir.c_str());
        } else if (*sideband_cmd) {
            const SidebandSummary s = run_cool_sideband(cfg, cfg.out_dir + "/sideband.csv");
            std::printf("cycles: %zu, final ground fidelity: %.1f\n", s.cycles,
                        s.final_ground_fidelity);
            std::printf("wrote %s/sideband.csv\n", cfg.out_dir.c_str());
        } else if (*rwa_cmd) {
            std::printf("%12s  %14s\n", "Omega/omega_z", "infidelity");
            for (const auto& row : run_rwa_check(cfg, ratios))
                std::printf("%12g  %14.6e\n", row.ratio, row.infidelity);
        } else if (*bell_cmd) {
            RunConfig bell_cfg = cfg;
            if (bell_cfg.spec.n_ions < 2) bell_cfg.spec.n_ions = 2;
            if (bell_cfg.shots == 0) bell_cfg.shots = 10000;
            const RunRecord rec = run_simulate(run_compile("BELL 0 1\n", bell_cfg), bell_cfg);
            std::printf("Bell pair on ions 0,1 (%zu shots, seed %llu)\n", bell_cfg.shots,
                        static_cast<unsigned long long>(bell_cfg.seed));
            for (const auto& e : rec.shot_estimates)
                std::printf("pattern %s: %zu shots, p = %.5f +- %.5f\n", e.pattern.c_str(),
                            e.count, e.p_hat, e.std_error);
        }
        return exit_ok;
    } catch (const TruncationError& e) {
        std::fprintf(stderr, "physics error: %s\n", e.what());
        return exit_physics;
    } catch (const PhononPreconditionError& e) {
        std::fprintf(stderr, "physics error: %s\n", e.what());
        return exit_physics;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return exit_usage;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    } catch (const SimulationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_physics;
    }
}
