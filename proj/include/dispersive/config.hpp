#pragma once

// CLI front-end support: the text config format (key-value lines plus
// [section] coefficient blocks in the (k, re, im) triple grammar) and the
// JSON report schema.
//
// Config grammar, by example:
//
//   # comment
//   kind real            # complex | real | single | frame
//   tolerance 1e-10
//   modes 8 16 32 48     # N-ladder; first entry is the default single N
//   t_final 0.01
//   method expm          # expm | step
//   principal_scale 1.0  # real kind
//   sign +               # single kind
//   a 1.0                # frame scalars: a b c l theta
//
//   [beta.m11]           # coefficient block: one "k re im" triple per line
//   0  0.5  0.0
//   1  0.25 0.0
//
// Blocks for the growth pair experiment carry a "compliant." or
// "violating." prefix. Absent blocks mean the zero function; frame configs
// must declare xi, eta and K.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "evolve.hpp"
#include "frame.hpp"

namespace dispersive {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

enum class SystemKind { Complex, Real, Single, Frame };

struct ExperimentParams {
    std::vector<int> modes{8, 16, 32, 48};
    double t_final = 0.01;
    std::optional<double> r;
    double tolerance = 1e-10;
    EvolutionMethod method = EvolutionMethod::ExactExponential;
    double dt = 0.0;
    double theta = 0.0;
};

struct RawConfig {
    std::map<std::string, std::string> scalars;
    std::map<std::string, std::vector<std::array<double, 3>>> blocks;

    bool has_block(const std::string& path) const { return blocks.count(path) > 0; }
    PeriodicScalar series(const std::string& path) const {
        auto it = blocks.find(path);
        return it == blocks.end() ? PeriodicScalar::zero() : PeriodicScalar::from_triples(it->second);
    }
    MatrixCoefficient matrix(const std::string& name) const {
        MatrixCoefficient M;
        for (const char* e : MatrixCoefficient::entry_names())
            M.entry_by_name(e) = series(name + "." + std::string(e));
        return M;
    }
};

struct SystemConfig {
    SystemKind kind = SystemKind::Complex;
    ExperimentParams params;
    RawConfig raw;
};

namespace detail {

inline bool is_known_block(const std::string& path) {
    static const std::vector<std::string> scalar_blocks = {"xi", "eta", "K", "initial.u1",
                                                           "initial.u2"};
    static const std::vector<std::string> matrices = {"A", "B", "C", "D", "beta", "gamma",
                                                      "a", "b", "c", "d"};
    std::string p = path;
    for (const char* prefix : {"compliant.", "violating."})
        if (p.rfind(prefix, 0) == 0) p = p.substr(std::string(prefix).size());
    for (const auto& s : scalar_blocks)
        if (p == s) return true;
    for (const auto& m : matrices)
        for (const char* e : MatrixCoefficient::entry_names())
            if (p == m + "." + std::string(e)) return true;
    // single-equation coefficient blocks are bare series named a,b,c,d
    for (const char* s : {"a", "b", "c", "d"})
        if (p == s) return true;
    return false;
}

}  // namespace detail

inline RawConfig parse_config_text(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first.front() == '[') {
            std::string sec = line;
            const auto lb = sec.find('['), rb = sec.find(']');
            if (lb == std::string::npos || rb == std::string::npos || rb < lb)
                throw ParseError(lineno, "malformed section header");
            section = sec.substr(lb + 1, rb - lb - 1);
            if (!detail::is_known_block(section))
                throw ParseError(lineno, "unknown coefficient block [" + section + "]");
            raw.blocks[section];  // empty section = zero function
            continue;
        }
        if (!section.empty() && (std::isdigit(first.front()) || first.front() == '-' ||
                                 first.front() == '+')) {
            double k, re, im;
            std::istringstream ts(line);
            if (!(ts >> k >> re >> im))
                throw ParseError(lineno, "expected 'k re im' triple in [" + section + "]");
            if (k != std::floor(k)) throw ParseError(lineno, "mode index must be an integer");
            raw.blocks[section].push_back({k, re, im});
            continue;
        }
        section.clear();
        std::string rest;
        std::getline(ls, rest);
        const auto pos = rest.find_first_not_of(" \t");
        raw.scalars[first] = pos == std::string::npos ? "" : rest.substr(pos);
    }
    return raw;
}

inline RawConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

inline SystemConfig load_config(const std::string& path) {
    SystemConfig cfg;
    cfg.raw = parse_config_file(path);
    auto scalar = [&](const std::string& key) -> std::optional<std::string> {
        auto it = cfg.raw.scalars.find(key);
        if (it == cfg.raw.scalars.end()) return std::nullopt;
        return it->second;
    };
    const auto kind = scalar("kind");
    if (!kind) throw std::runtime_error("config: missing required key 'kind'");
    if (*kind == "complex")
        cfg.kind = SystemKind::Complex;
    else if (*kind == "real")
        cfg.kind = SystemKind::Real;
    else if (*kind == "single")
        cfg.kind = SystemKind::Single;
    else if (*kind == "frame")
        cfg.kind = SystemKind::Frame;
    else
        throw std::runtime_error("config: unknown kind '" + *kind + "'");

    if (auto v = scalar("tolerance")) cfg.params.tolerance = std::stod(*v);
    if (auto v = scalar("t_final")) cfg.params.t_final = std::stod(*v);
    if (auto v = scalar("r")) cfg.params.r = std::stod(*v);
    if (auto v = scalar("dt")) cfg.params.dt = std::stod(*v);
    if (auto v = scalar("theta")) cfg.params.theta = std::stod(*v);
    if (auto v = scalar("modes")) {
        cfg.params.modes.clear();
        std::istringstream ms(*v);
        int n;
        while (ms >> n) cfg.params.modes.push_back(n);
        if (cfg.params.modes.empty()) throw std::runtime_error("config: empty 'modes' list");
    }
    if (auto v = scalar("method")) {
        if (*v == "expm")
            cfg.params.method = EvolutionMethod::ExactExponential;
        else if (*v == "step")
            cfg.params.method = EvolutionMethod::Rk4Stepping;
        else
            throw std::runtime_error("config: unknown method '" + *v + "'");
    }
    return cfg;
}

inline ComplexSystem build_complex(const SystemConfig& cfg, const std::string& prefix = "") {
    ComplexSystem s;
    s.A = cfg.raw.matrix(prefix + "A");
    s.B = cfg.raw.matrix(prefix + "B");
    s.C = cfg.raw.matrix(prefix + "C");
    s.D = cfg.raw.matrix(prefix + "D");
    return s;
}

inline RealSystem build_real(const SystemConfig& cfg, const std::string& prefix = "") {
    double a = 1.0;
    if (auto it = cfg.raw.scalars.find("principal_scale"); it != cfg.raw.scalars.end())
        a = std::stod(it->second);
    return RealSystem(cfg.raw.matrix(prefix + "beta"), cfg.raw.matrix(prefix + "gamma"), a);
}

inline SingleEquation build_single(const SystemConfig& cfg, const std::string& prefix = "") {
    SingleEquation eq;
    if (auto it = cfg.raw.scalars.find("sign"); it != cfg.raw.scalars.end())
        eq.sign = (it->second == "-" || it->second == "-1") ? -1 : +1;
    eq.a = cfg.raw.series(prefix + "a");
    eq.b = cfg.raw.series(prefix + "b");
    eq.c = cfg.raw.series(prefix + "c");
    eq.d = cfg.raw.series(prefix + "d");
    return eq;
}

inline FrameState build_frame(const SystemConfig& cfg, const std::string& prefix = "") {
    for (const char* blk : {"xi", "eta", "K"})
        if (!cfg.raw.has_block(prefix + blk))
            throw std::runtime_error("config: frame kind requires block [" + prefix +
                                     std::string(blk) + "]");
    auto num = [&](const std::string& key, double dflt) {
        auto it = cfg.raw.scalars.find(key);
        return it == cfg.raw.scalars.end() ? dflt : std::stod(it->second);
    };
    return FrameState(cfg.raw.series(prefix + "xi"), cfg.raw.series(prefix + "eta"),
                      cfg.raw.series(prefix + "K"), num("a", 1.0), num("b", 0.0), num("c", 0.0),
                      static_cast<int>(num("l", 4.0)));
}

inline bool has_pair_blocks(const SystemConfig& cfg) {
    for (const auto& [path, _] : cfg.raw.blocks)
        if (path.rfind("compliant.", 0) == 0 || path.rfind("violating.", 0) == 0) return true;
    return false;
}

// ---- JSON report schema (version 1) ----

inline nlohmann::json series_to_json(const PeriodicScalar& f) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : f.to_triples()) j.push_back({static_cast<int>(t[0]), t[1], t[2]});
    return j;
}

inline nlohmann::json matrix_to_json(const MatrixCoefficient& M) {
    nlohmann::json j;
    for (const char* e : MatrixCoefficient::entry_names()) j[e] = series_to_json(M.entry_by_name(e));
    return j;
}

inline nlohmann::json verdict_to_json(const Verdict& v) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["well_posed"] = v.well_posed;
    j["tolerance"] = v.tolerance;
    j["residuals"] = nlohmann::json::array();
    for (const auto& [name, val] : v.residuals)
        j["residuals"].push_back({{"name", name},
                                  {"re", val.real()},
                                  {"im", val.imag()},
                                  {"pass", std::abs(val) <= v.tolerance}});
    return j;
}

}  // namespace dispersive
