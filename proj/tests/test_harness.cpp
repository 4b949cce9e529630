#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "ionpulse/harness.hpp"

using namespace ionpulse;
using Catch::Approx;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ionpulse_test_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

RunConfig test_config() {
    RunConfig c;
    c.spec.n_ions = 2;
    c.spec.fock_cutoff = 8;
    c.seed = 7;
    return c;
}

}  // namespace

TEST_CASE("config json round trip") {
    RunConfig c = test_config();
    c.shots = 123;
    c.sideband_n0 = 4;
    const RunConfig back = config_from_json(config_to_json(c));
    CHECK(back.spec.n_ions == c.spec.n_ions);
    CHECK(back.spec.fock_cutoff == c.spec.fock_cutoff);
    CHECK(back.spec.eta == c.spec.eta);
    CHECK(back.shots == 123);
    CHECK(back.seed == 7);
    CHECK(back.sideband_n0 == 4);
    CHECK(back.doppler.mass == c.doppler.mass);
}

TEST_CASE("load_config validates") {
    TempDir tmp;
    write_text_file(tmp.file("ok.json"), R"({"n_ions": 1, "fock_cutoff": 4})");
    const RunConfig c = load_config(tmp.file("ok.json"));
    CHECK(c.spec.n_ions == 1);

    write_text_file(tmp.file("bad.json"), R"({"n_ions": 0})");
    CHECK_THROWS_AS(load_config(tmp.file("bad.json")), ValidationError);
    write_text_file(tmp.file("mangled.json"), "{nope");
    CHECK_THROWS_AS(load_config(tmp.file("mangled.json")), ValidationError);
    CHECK_THROWS_AS(load_config(tmp.file("missing.json")), ValidationError);
}

TEST_CASE("run_compile") {
    const RunConfig cfg = test_config();

    SECTION("BELL circuit lowers to a 9-line schedule") {
        const PulseSchedule s = run_compile("BELL 0 1\n", cfg);
        CHECK(s.size() == 9);
        const std::string text = serialize_schedule(s);
        CHECK(std::count(text.begin(), text.end(), '\n') == 9);
        CHECK(parse_schedule(text) == s);
    }
    SECTION("empty circuit gives an empty schedule") {
        CHECK(run_compile("", cfg).size() == 0);
        CHECK(serialize_schedule(run_compile("", cfg)).empty());
    }
    SECTION("CNOT 0 0 is rejected") {
        CHECK_THROWS_MATCHES(run_compile("CNOT 0 0\n", cfg), ParseError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("control equals target")));
    }
}

TEST_CASE("run_simulate") {
    RunConfig cfg = test_config();

    SECTION("empty schedule leaves every ion bright") {
        const RunRecord rec = run_simulate(PulseSchedule{}, cfg);
        REQUIRE(rec.bright_probabilities.size() == 2);
        CHECK(rec.bright_probabilities[0] == Approx(1.0).margin(1e-12));
        CHECK(rec.bright_probabilities[1] == Approx(1.0).margin(1e-12));
        CHECK(rec.phonon_distribution[0] == Approx(1.0).margin(1e-12));
    }
    SECTION("bell schedule with shots: only correlated outcomes") {
        cfg.shots = 10000;
        const RunRecord rec = run_simulate(run_compile("BELL 0 1\n", cfg), cfg);
        REQUIRE(rec.shot_estimates.size() == 2);
        for (const auto& e : rec.shot_estimates) {
            CHECK((e.pattern == "00" || e.pattern == "11"));
            CHECK(std::abs(double(e.count) - 5000.0) <= 300.0);
        }
        const json j = rec.to_json();
        CHECK(j["shots"]["total"] == 10000);
        CHECK(j["schedule"].size() == 9);
    }
    SECTION("rerunning the same config and seed is byte-identical") {
        TempDir tmp;
        cfg.shots = 200;
        cfg.out_dir = tmp.file("a");
        write_text_file(tmp.file("bell.txt"), serialize_schedule(run_compile("BELL 0 1\n", cfg)));
        run_simulate_files(tmp.file("bell.txt"), cfg);
        const std::string csv_a = read_text_file(cfg.out_dir + "/shots.csv");
        cfg.out_dir = tmp.file("b");
        run_simulate_files(tmp.file("bell.txt"), cfg);
        CHECK(read_text_file(cfg.out_dir + "/shots.csv") == csv_a);
        CHECK(csv_a.starts_with("shot,ion0,ion1\n"));
    }
    SECTION("truncation surfaces with the pulse index") {
        TempDir tmp;
        ChainSpec tight = cfg.spec;
        tight.fock_cutoff = 2;
        cfg.spec = tight;
        // two blue-sideband pi pulses: the second would pass the cutoff
        write_text_file(tmp.file("bsb.txt"), "BSB 0 3.14159265358979 0\n");
        cfg.out_dir = tmp.file("out");
        CHECK_THROWS_MATCHES(run_simulate_files(tmp.file("bsb.txt"), cfg), TruncationError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::StartsWith("pulse 0")));
    }
}

TEST_CASE("run_cool_sideband") {
    RunConfig cfg = test_config();
    cfg.spec.fock_cutoff = 16;
    cfg.sideband_n0 = 10;
    TempDir tmp;
    const SidebandSummary s = run_cool_sideband(cfg, tmp.file("sideband.csv"));
    CHECK(s.cycles == 10);
    CHECK(s.final_ground_fidelity == Approx(1.0).margin(1e-10));
    const std::string csv = read_text_file(tmp.file("sideband.csv"));
    CHECK(csv.starts_with("cycle,n_before,pulse_time_s,fidelity_ground\n"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}

TEST_CASE("run_cool_doppler") {
    RunConfig cfg = test_config();
    TempDir tmp;

    SECTION("fixed seed reproduces the csv") {
        const DopplerSummary a = run_cool_doppler(cfg, tmp.file("a.csv"));
        run_cool_doppler(cfg, tmp.file("b.csv"));
        CHECK(read_text_file(tmp.file("a.csv")) == read_text_file(tmp.file("b.csv")));
        CHECK(a.recoil_speed > 0.0);
    }
    SECTION("ensemble mean terminal speed lands in [0, 3 recoil speeds]") {
        double sum = 0.0;
        for (int seed = 0; seed < 100; ++seed) {
            RunConfig c = cfg;
            c.seed = seed;
            sum += run_cool_doppler(c).terminal_speed;
        }
        const double mean = sum / 100.0;
        CHECK(mean >= 0.0);
        CHECK(mean <= 3.0 * run_cool_doppler(cfg).recoil_speed);
    }
}

TEST_CASE("run_rwa_check") {
    RunConfig cfg = test_config();
    SECTION("single ratio gives a single row") {
        const auto rows = run_rwa_check(cfg, {0.1});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].ratio == 0.1);
        CHECK(rows[0].infidelity > 0.0);
    }
    SECTION("eta = 0 rows are machine zero") {
        cfg.spec.eta = 0.0;
        const auto rows = run_rwa_check(cfg, {0.1, 0.05});
        for (const auto& r : rows) CHECK(r.infidelity < 1e-9);
    }
}
