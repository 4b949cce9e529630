// Projective bright/dark readout.
//
// Ground-state ions fluoresce (bright), excited ions stay dark; the phonon
// register is never measured and is marginalized over.  Ions collapse in
// index order, each outcome drawn from the conditional distribution given
// the earlier ones -- distributionally equivalent to a joint measurement
// since the projectors commute.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ionpulse/hybrid_state.hpp"
#include "ionpulse/rng.hpp"

namespace ionpulse {

struct ShotRecord {
    std::size_t shot = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> bright;  // per ion, 1 = bright (= ground)

    bool operator==(const ShotRecord&) const = default;
};

// Probability that `ion` reads bright: total weight with that ion in g.
inline double bright_probability(const HybridState& s, int ion) {
    if (ion < 0 || ion >= s.spec().n_ions)
        throw ValidationError("bright_probability: ion out of range");
    const int mask = s.spec().ion_bit(ion);
    const int d = s.spec().fock_cutoff;
    double p = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (!(static_cast<int>(i / d) & mask)) p += std::norm(s[i]);
    return p;
}

inline double dark_probability(const HybridState& s, int ion) {
    return 1.0 - bright_probability(s, ion);
}

// Measure all ions in index order; returns the record and the collapsed,
// renormalized state.  Deterministic given the seed.  detection_error flips
// each recorded bit with that probability (the collapse itself is ideal).
inline std::pair<ShotRecord, HybridState> measure_chain(const HybridState& s, std::uint64_t seed,
                                                        double detection_error = 0.0) {
    if (detection_error < 0.0 || detection_error > 1.0)
        throw ValidationError("measure_chain: detection_error must be in [0, 1]");
    auto rng = make_stream(seed);
    HybridState out = s;
    ShotRecord rec;
    rec.seed = seed;
    const int d = out.spec().fock_cutoff;

    for (int ion = 0; ion < out.spec().n_ions; ++ion) {
        const int mask = out.spec().ion_bit(ion);
        double p_bright = 0.0;
        for (std::size_t i = 0; i < out.dim(); ++i)
            if (!(static_cast<int>(i / d) & mask)) p_bright += std::norm(out[i]);

        const bool bright = uniform01(rng) < p_bright;
        const double p_sel = bright ? p_bright : 1.0 - p_bright;
        if (p_sel < 1e-15)
            throw SimulationError("measure_chain: collapse onto a near-zero-probability branch");

        const double inv = 1.0 / std::sqrt(p_sel);
        for (std::size_t i = 0; i < out.dim(); ++i) {
            const bool ion_is_g = !(static_cast<int>(i / d) & mask);
            if (ion_is_g == bright)
                out[i] *= inv;
            else
                out[i] = 0.0;
        }

        bool recorded = bright;
        if (detection_error > 0.0 && uniform01(rng) < detection_error) recorded = !recorded;
        rec.bright.push_back(recorded ? 1 : 0);
    }
    return {rec, out};
}

// n_shots independent preparations of the same state; shot i draws from the
// derived substream derive_seed(base_seed, i).
inline std::vector<ShotRecord> sample_shots(const HybridState& s, std::size_t n_shots,
                                            std::uint64_t base_seed, double detection_error = 0.0) {
    std::vector<ShotRecord> records;
    records.reserve(n_shots);
    for (std::size_t i = 0; i < n_shots; ++i) {
        auto [rec, collapsed] = measure_chain(s, derive_seed(base_seed, i), detection_error);
        rec.shot = i;
        records.push_back(std::move(rec));
    }
    return records;
}

struct PatternEstimate {
    std::string pattern;  // e.g. "10" = ion0 bright, ion1 dark
    std::size_t count = 0;
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/n)
};

// Per-pattern frequencies with binomial standard errors.
inline std::vector<PatternEstimate> estimate_probabilities(const std::vector<ShotRecord>& records) {
    if (records.empty()) throw ValidationError("estimate_probabilities: no shots");
    std::map<std::string, std::size_t> counts;
    for (const auto& r : records) {
        std::string key;
        for (auto b : r.bright) key += b ? '1' : '0';
        ++counts[key];
    }
    const double n = static_cast<double>(records.size());
    std::vector<PatternEstimate> out;
    for (const auto& [pattern, count] : counts) {
        const double p = count / n;
        out.push_back({pattern, count, p, std::sqrt(p * (1.0 - p) / n)});
    }
    return out;
}

inline std::string shots_csv(const std::vector<ShotRecord>& records, int n_ions) {
    std::string out = "shot";
    for (int i = 0; i < n_ions; ++i) out += ",ion" + std::to_string(i);
    out += "\n";
    for (const auto& r : records) {
        out += std::to_string(r.shot);
        for (auto b : r.bright) out += b ? ",1" : ",0";
        out += "\n";
    }
    return out;
}

}  // namespace ionpulse
