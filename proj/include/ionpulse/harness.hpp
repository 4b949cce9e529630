// Experiment harness behind the CLI: config ingestion, seeded execution,
// structured result persistence.  Every command is a pure function of
// (config, seed, input files); records embed the config echo so a run can
// be reproduced from its own output.

#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ionpulse/compiler.hpp"
#include "ionpulse/cooling.hpp"
#include "ionpulse/hamiltonian.hpp"
#include "ionpulse/readout.hpp"
#include "ionpulse/schedule_io.hpp"
#include "ionpulse/version.hpp"

namespace ionpulse {

using json = nlohmann::json;

struct RunConfig {
    ChainSpec spec;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string experiment = "simulate";

    // Doppler stage (cool doppler); defaults: Ca-40 at 397 nm with a
    // recoil-scale linewidth, started at the paper's ~1 m/s newborn speed.
    DopplerParams doppler = default_doppler();
    std::size_t doppler_max_events = 20000;

    // Sideband stage (cool sideband)
    int sideband_n0 = 10;

    static DopplerParams default_doppler() {
        DopplerParams p;
        p.mass = 6.6359e-26;                       // 40 u
        p.wavevector_k = 2.0 * std::numbers::pi / 397e-9;
        const double kv = p.wavevector_k * hbar * p.wavevector_k / p.mass;  // k * v_recoil
        p.gamma_linewidth = 20.0 * kv;
        p.detuning_delta = 10.0 * kv;
        p.initial_speed = 50.0 * hbar * p.wavevector_k / p.mass;
        return p;
    }
};

inline void validate_config(const RunConfig& c) {
    validate_spec(c.spec);
    if (!(c.spec.eta > 0.0)) throw ValidationError("eta must be positive");
    if (c.shots < 1 && c.experiment == "simulate-shots")
        throw ValidationError("shots must be >= 1");
}

inline RunConfig config_from_json(const json& j) {
    RunConfig c;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("n_ions", c.spec.n_ions);
    get("omega_z", c.spec.omega_z);
    get("eta", c.spec.eta);
    get("omega_rabi", c.spec.omega_rabi);
    get("fock_cutoff", c.spec.fock_cutoff);
    get("species_label", c.spec.species_label);
    get("shots", c.shots);
    get("seed", c.seed);
    get("out_dir", c.out_dir);
    get("experiment", c.experiment);
    get("mass_kg", c.doppler.mass);
    get("wavevector_rad_m", c.doppler.wavevector_k);
    get("linewidth_rad_s", c.doppler.gamma_linewidth);
    get("detuning_rad_s", c.doppler.detuning_delta);
    get("initial_speed_m_s", c.doppler.initial_speed);
    get("doppler_max_events", c.doppler_max_events);
    get("sideband_n0", c.sideband_n0);
    return c;
}

inline json config_to_json(const RunConfig& c) {
    return json{{"n_ions", c.spec.n_ions},
                {"omega_z", c.spec.omega_z},
                {"eta", c.spec.eta},
                {"omega_rabi", c.spec.omega_rabi},
                {"fock_cutoff", c.spec.fock_cutoff},
                {"species_label", c.spec.species_label},
                {"shots", c.shots},
                {"seed", c.seed},
                {"out_dir", c.out_dir},
                {"experiment", c.experiment},
                {"mass_kg", c.doppler.mass},
                {"wavevector_rad_m", c.doppler.wavevector_k},
                {"linewidth_rad_s", c.doppler.gamma_linewidth},
                {"detuning_rad_s", c.doppler.detuning_delta},
                {"initial_speed_m_s", c.doppler.initial_speed},
                {"doppler_max_events", c.doppler_max_events},
                {"sideband_n0", c.sideband_n0}};
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("config " + path + ": " + e.what());
    }
    RunConfig c = config_from_json(j);
    validate_spec(c.spec);
    return c;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << text;
}

// Self-contained result of one simulate run.
struct RunRecord {
    json config;
    std::vector<PulseInstruction> schedule;
    std::vector<double> bright_probabilities;
    std::vector<double> phonon_distribution;
    std::vector<PatternEstimate> shot_estimates;
    std::size_t shots = 0;
    double wall_seconds = 0.0;

    json to_json() const {
        json rec;
        rec["version"] = version;
        rec["config"] = config;
        json sched = json::array();
        for (const auto& p : schedule) {
            json jp{{"kind", pulse_kind_name(p.kind)}, {"ion", p.ion}, {"beta", p.beta}};
            if (p.kind != PulseKind::AuxBlueSideband) jp["phase"] = p.phase;
            sched.push_back(jp);
        }
        rec["schedule"] = sched;
        rec["final_state"] = {{"bright_probabilities", bright_probabilities},
                              {"phonon_distribution", phonon_distribution}};
        json stats = json::object();
        for (const auto& e : shot_estimates)
            stats[e.pattern] = {{"count", e.count}, {"p_hat", e.p_hat}, {"std_error", e.std_error}};
        rec["shots"] = {{"total", shots}, {"patterns", stats}};
        rec["wall_seconds"] = wall_seconds;
        return rec;
    }
};

// compile: circuit text -> schedule text (round-trips to an equal schedule).
inline PulseSchedule run_compile(const std::string& circuit_text, const RunConfig& cfg) {
    const std::vector<Gate> circuit = parse_circuit(circuit_text);
    return compile_circuit(cfg.spec, circuit);
}

// simulate: |g..g,0> -> schedule -> optional shot sampling.
inline RunRecord run_simulate(const PulseSchedule& schedule, const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    HybridState state = new_ground(cfg.spec);
    apply_schedule(state, schedule);

    RunRecord rec;
    rec.config = config_to_json(cfg);
    rec.schedule = schedule.pulses;
    for (int i = 0; i < cfg.spec.n_ions; ++i)
        rec.bright_probabilities.push_back(bright_probability(state, i));
    rec.phonon_distribution = phonon_distribution(state);
    rec.shots = cfg.shots;
    if (cfg.shots > 0) rec.shot_estimates = estimate_probabilities(sample_shots(state, cfg.shots, cfg.seed));
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// simulate + persist record.json and shots.csv under cfg.out_dir.
inline RunRecord run_simulate_files(const std::string& schedule_path, const RunConfig& cfg) {
    const PulseSchedule schedule = parse_schedule(read_text_file(schedule_path));
    RunRecord rec = run_simulate(schedule, cfg);
    write_text_file(cfg.out_dir + "/record.json", rec.to_json().dump(2) + "\n");
    if (cfg.shots > 0) {
        HybridState state = new_ground(cfg.spec);
        apply_schedule(state, schedule);
        write_text_file(cfg.out_dir + "/shots.csv",
                        shots_csv(sample_shots(state, cfg.shots, cfg.seed), cfg.spec.n_ions));
    }
    return rec;
}

struct DopplerSummary {
    double terminal_speed = 0.0;
    double recoil_speed = 0.0;
    std::size_t events = 0;
    bool stagnated = false;
};

inline DopplerSummary run_cool_doppler(const RunConfig& cfg, const std::string& csv_path = "") {
    DopplerParams p = cfg.doppler;
    p.seed = cfg.seed;
    const CoolingTrajectory traj = doppler_mc_run(p, cfg.doppler_max_events);
    if (!csv_path.empty()) write_text_file(csv_path, cooling_trajectory_csv(traj));
    return {std::abs(traj.final_velocity), recoil_terminal_speed(p), traj.events.size(),
            traj.stagnated};
}

struct SidebandSummary {
    std::size_t cycles = 0;
    double final_ground_fidelity = 0.0;
};

inline SidebandSummary run_cool_sideband(const RunConfig& cfg, const std::string& csv_path = "") {
    ChainSpec spec = cfg.spec;
    spec.n_ions = 1;  // cooling acts on a single ion's ladder
    const auto cycles = sideband_cool(spec, cfg.sideband_n0);
    if (!csv_path.empty()) write_text_file(csv_path, sideband_log_csv(cycles, spec));
    const double fid =
        cycles.empty() ? 0.0 : fidelity(cycles.back().state_after_decay, new_ground(spec));
    return {cycles.size(), fid};
}

struct RwaRow {
    double ratio;
    double infidelity;
};

inline std::vector<RwaRow> run_rwa_check(const RunConfig& cfg, const std::vector<double>& ratios) {
    std::vector<RwaRow> rows;
    for (double r : ratios)
        rows.push_back({r, rwa_infidelity(cfg.spec.omega_z, cfg.spec.eta, r)});
    return rows;
}

}  // namespace ionpulse
