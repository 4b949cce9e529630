// Text formats.
//
// Circuit, one gate per line:   H 0 | X 0 | Z 0 | ROT ion theta phi |
//                               CZ c t | CNOT c t | BELL a b
// Schedule, one pulse per line: CARRIER ion beta phase | RSB ion beta phase |
//                               BSB ion beta phase | AUXBSB ion beta
// Angles are radians in decimal text; blank lines and lines starting with
// '#' are ignored.  Serialization uses %.17g so parse -> write round-trips
// byte-identically.

#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ionpulse/compiler.hpp"
#include "ionpulse/errors.hpp"
#include "ionpulse/gates.hpp"

namespace ionpulse {

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline int parse_int(const std::string& tok, int line) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
    return v;
}

inline double parse_double(const std::string& tok, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected number, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, "expected number, got '" + tok + "'");
    return v;
}

inline void expect_arity(const std::vector<std::string>& toks, std::size_t n, int line) {
    if (toks.size() != n)
        throw ParseError(line, "'" + toks[0] + "' takes " + std::to_string(n - 1) +
                                   " argument(s), got " + std::to_string(toks.size() - 1));
}

}  // namespace detail

inline std::string serialize_circuit(const std::vector<Gate>& circuit) {
    std::string out;
    for (const Gate& g : circuit) {
        switch (g.kind) {
            case Gate::Kind::Rot:
                out += "ROT " + std::to_string(g.a) + " " + detail::format_double(g.theta) + " " +
                       detail::format_double(g.phi);
                break;
            case Gate::Kind::H: out += "H " + std::to_string(g.a); break;
            case Gate::Kind::X: out += "X " + std::to_string(g.a); break;
            case Gate::Kind::Z: out += "Z " + std::to_string(g.a); break;
            case Gate::Kind::CZ: out += "CZ " + std::to_string(g.a) + " " + std::to_string(g.b); break;
            case Gate::Kind::CNOT:
                out += "CNOT " + std::to_string(g.a) + " " + std::to_string(g.b);
                break;
            case Gate::Kind::BellPrep:
                out += "BELL " + std::to_string(g.a) + " " + std::to_string(g.b);
                break;
        }
        out += "\n";
    }
    return out;
}

inline std::vector<Gate> parse_circuit(const std::string& text) {
    std::vector<Gate> circuit;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = detail::split_tokens(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        const std::string& op = toks[0];
        if (op == "H" || op == "X" || op == "Z") {
            detail::expect_arity(toks, 2, lineno);
            const int ion = detail::parse_int(toks[1], lineno);
            circuit.push_back(op == "H" ? Gate::h(ion) : op == "X" ? Gate::x(ion) : Gate::z(ion));
        } else if (op == "ROT") {
            detail::expect_arity(toks, 4, lineno);
            circuit.push_back(Gate::rot(detail::parse_int(toks[1], lineno),
                                        detail::parse_double(toks[2], lineno),
                                        detail::parse_double(toks[3], lineno)));
        } else if (op == "CZ" || op == "CNOT" || op == "BELL") {
            detail::expect_arity(toks, 3, lineno);
            const int a = detail::parse_int(toks[1], lineno);
            const int b = detail::parse_int(toks[2], lineno);
            if (a == b) throw ParseError(lineno, "control equals target");
            circuit.push_back(op == "CZ" ? Gate::cz(a, b)
                              : op == "CNOT" ? Gate::cnot(a, b)
                                             : Gate::bell(a, b));
        } else {
            throw ParseError(lineno, "unknown gate '" + op + "'");
        }
    }
    return circuit;
}

inline std::string serialize_schedule(const PulseSchedule& schedule) {
    std::string out;
    for (const auto& p : schedule.pulses) {
        out += pulse_kind_name(p.kind);
        out += " " + std::to_string(p.ion) + " " + detail::format_double(p.beta);
        if (p.kind != PulseKind::AuxBlueSideband) out += " " + detail::format_double(p.phase);
        out += "\n";
    }
    return out;
}

inline PulseSchedule parse_schedule(const std::string& text) {
    PulseSchedule schedule;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = detail::split_tokens(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        const std::string& op = toks[0];
        PulseInstruction p;
        if (op == "CARRIER" || op == "RSB" || op == "BSB") {
            detail::expect_arity(toks, 4, lineno);
            p.kind = op == "CARRIER" ? PulseKind::Carrier
                     : op == "RSB"   ? PulseKind::RedSideband
                                     : PulseKind::BlueSideband;
            p.ion = detail::parse_int(toks[1], lineno);
            p.beta = detail::parse_double(toks[2], lineno);
            p.phase = detail::parse_double(toks[3], lineno);
        } else if (op == "AUXBSB") {
            detail::expect_arity(toks, 3, lineno);
            p.kind = PulseKind::AuxBlueSideband;
            p.ion = detail::parse_int(toks[1], lineno);
            p.beta = detail::parse_double(toks[2], lineno);
        } else {
            throw ParseError(lineno, "unknown pulse '" + op + "'");
        }
        schedule.pulses.push_back(p);
    }
    return schedule;
}

}  // namespace ionpulse
