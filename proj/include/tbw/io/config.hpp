#pragma once

// YAML run configuration and its resolved JSON echo.
//
//   system:
//     preset: water_main        # or a `section` block (exactly one)
//     filled: false             # preset only
//     section: {D, t, E, nu, kappa, rho_steel, rho_contents}
//     overrides: {A_b, J, G, m_l, r}
//     L: 100
//     foundation: {k_l} | {p_u, u_l} | {omega2}
//   motion: {D_max, f_hz | omega, C_ph (number or inf), t_g | cycles}
//   analysis: {...}
//   output: {dir, formats: [csv, svg]}

#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include <yaml-cpp/yaml.h>

#include "tbw/model.hpp"
#include "tbw/response/ground_motion.hpp"

namespace tbw::io {

struct MotionBlock {
    bool present = false;
    double D_max = 0.1;
    double omega_f = 0.0;
    double C_ph = std::numeric_limits<double>::infinity();
    std::optional<double> t_g;
    std::optional<double> cycles;

    int line = 0;

    /// Complete motion for a transient run (frequency and one duration field required).
    GroundMotion motion() const {
        if (!present) throw ConfigError("motion", "block required for this command");
        if (!(omega_f > 0.0)) throw ConfigError("motion", "give exactly one of f_hz or omega", line);
        if (!t_g && !cycles) throw ConfigError("motion", "give exactly one of t_g or cycles", line);
        GroundMotion g;
        g.D_max = D_max;
        g.omega_f = omega_f;
        g.C_ph = C_ph;
        g.t_g = t_g ? *t_g : *cycles * 2.0 * std::numbers::pi / omega_f;
        return g;
    }
};

struct AnalysisBlock {
    int n_modes = 0;                 ///< spectrum: modes listed (0 = use omega_max); respond/sweep: fixed truncation
    double omega_max = 0.0;          ///< spectrum: list every root up to this [rad/s]
    std::vector<int> modes;          ///< 1-based indices for `modes`
    std::vector<double> f_list;      ///< sweep frequencies [Hz]
    double f_min = 0.05, f_max = 20.0;
    int f_count = 200;
    int refine_levels = 3;
    double cycles = 15.0;            ///< sweep duration per point
    double t_end = 0.0;
    std::vector<double> snapshot_times = {5.0};
    bool oracle = true;
    double fem_h = 1.0;
    int oracle_modes = 22;           ///< verify: modes compared
    double steps_per_period = 40.0;
    double max_dx = 1.0;
    double truncation_factor = 3.0;
    double w2_factor = 1.5;
    int mode_cap = 1000;
    int out_x = 201, out_t = 501;
    int mode_points = 501;
    double freq_pct_bound = 0.5;
    double mac_bound = 0.99;
    double rms_pct_bound = 2.0;
};

struct OutputBlock {
    std::string dir = "out";
    bool csv = true;
    bool svg = true;
};

struct RunConfig {
    SystemConfig system;
    std::string system_source;       ///< "preset:water_main" or "section"
    std::string foundation_source;   ///< "k_l", "bilinear" or "omega2"
    MotionBlock motion;
    AnalysisBlock analysis;
    OutputBlock output;
};

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

inline double number(const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) throw ConfigError(field, "expected a number", line_of(n));
    const std::string s = n.Scalar();
    if (s == "inf" || s == ".inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field, "expected a number, got '" + s + "'", line_of(n));
    }
}

inline int integer(const YAML::Node& n, const std::string& field) {
    const double v = number(n, field);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(field, "expected an integer", line_of(n));
    return static_cast<int>(v);
}

inline bool boolean(const YAML::Node& n, const std::string& field) {
    try {
        return n.as<bool>();
    } catch (const YAML::Exception&) {
        throw ConfigError(field, "expected true or false", line_of(n));
    }
}

inline void check_keys(const YAML::Node& n, const std::string& block, const std::set<std::string>& allowed) {
    if (!n.IsMap()) throw ConfigError(block, "expected a mapping", line_of(n));
    for (const auto& kv : n) {
        const std::string k = kv.first.as<std::string>();
        if (!allowed.count(k)) throw ConfigError(block + "." + k, "unknown key", line_of(kv.first));
    }
}

inline std::optional<double> opt_number(const YAML::Node& parent, const std::string& key, const std::string& block) {
    if (!parent[key]) return std::nullopt;
    return number(parent[key], block + "." + key);
}

inline double positive(const YAML::Node& parent, const std::string& key, const std::string& block) {
    const std::string f = block + "." + key;
    if (!parent[key]) throw ConfigError(f, "required", line_of(parent));
    const double v = number(parent[key], f);
    if (!(v > 0.0)) throw ConfigError(f, "must be > 0", line_of(parent[key]));
    return v;
}

template <class T, class F>
std::vector<T> list(const YAML::Node& n, const std::string& field, F&& conv) {
    std::vector<T> out;
    if (n.IsScalar()) {
        out.push_back(conv(n, field));
        return out;
    }
    if (!n.IsSequence()) throw ConfigError(field, "expected a list", line_of(n));
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(conv(n[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

inline SystemConfig parse_system(const YAML::Node& s, RunConfig& rc) {
    check_keys(s, "system", {"preset", "filled", "section", "overrides", "L", "foundation"});
    const double L = positive(s, "L", "system");
    const bool has_preset = static_cast<bool>(s["preset"]), has_section = static_cast<bool>(s["section"]);
    if (has_preset == has_section)
        throw ConfigError("system", "give exactly one of `preset` or `section`", line_of(s));

    DerivedSection ds;
    if (has_preset) {
        const std::string p = s["preset"].as<std::string>();
        if (p != "water_main") throw ConfigError("system.preset", "unknown preset '" + p + "'", line_of(s["preset"]));
        const bool filled = s["filled"] ? boolean(s["filled"], "system.filled") : false;
        const SystemConfig base =
            presets::water_main(L, filled ? presets::kFilledMass : presets::kUnfilledMass);
        ds.section = base.section;
        ds.m_l = base.m_l;
        rc.system_source = std::string("preset:water_main") + (filled ? ":filled" : ":unfilled");
    } else {
        if (s["filled"]) throw ConfigError("system.filled", "only valid with a preset", line_of(s["filled"]));
        const YAML::Node sec = s["section"];
        check_keys(sec, "system.section", {"D", "t", "E", "nu", "kappa", "rho_steel", "rho_contents"});
        const double D = positive(sec, "D", "system.section"), t = positive(sec, "t", "system.section");
        const double E = positive(sec, "E", "system.section");
        const double nu = opt_number(sec, "nu", "system.section").value_or(0.3);
        const double kappa = opt_number(sec, "kappa", "system.section").value_or(0.53);
        const double rho = positive(sec, "rho_steel", "system.section");
        const double rho_c = opt_number(sec, "rho_contents", "system.section").value_or(0.0);
        try {
            ds = derive_section(D, t, E, nu, kappa, rho, rho_c);
        } catch (const InvalidInput& e) {
            throw ConfigError("system.section", e.what(), line_of(sec));
        }
        rc.system_source = "section";
    }
    if (const YAML::Node o = s["overrides"]) {
        check_keys(o, "system.overrides", {"A_b", "J", "G", "m_l", "r"});
        SectionOverrides ov;
        ov.A_b = opt_number(o, "A_b", "system.overrides");
        ov.J = opt_number(o, "J", "system.overrides");
        ov.G = opt_number(o, "G", "system.overrides");
        ov.m_l = opt_number(o, "m_l", "system.overrides");
        ds = apply_overrides(ds, ov);
        if (o["r"]) {
            const double r = number(o["r"], "system.overrides.r");
            if (std::abs(r - ds.section.r) > 1e-3 * ds.section.r)
                throw ConfigError("system.overrides.r", "r is derived as sqrt(J/A_b) = " + std::to_string(ds.section.r) +
                                                            " and cannot be set independently",
                                  line_of(o["r"]));
        }
    }

    const YAML::Node f = s["foundation"];
    if (!f) throw ConfigError("system.foundation", "required", line_of(s));
    check_keys(f, "system.foundation", {"k_l", "p_u", "u_l", "omega2"});
    const int sources = (f["k_l"] ? 1 : 0) + ((f["p_u"] || f["u_l"]) ? 1 : 0) + (f["omega2"] ? 1 : 0);
    if (sources != 1)
        throw ConfigError("system.foundation", "give exactly one of k_l, (p_u, u_l) or omega2", line_of(f));
    FoundationParams fp;
    if (f["k_l"]) {
        fp.k_l = positive(f, "k_l", "system.foundation");
        rc.foundation_source = "k_l";
    } else if (f["omega2"]) {
        const double w2 = positive(f, "omega2", "system.foundation");
        fp.k_l = w2 * w2 * ds.m_l;
        rc.foundation_source = "omega2";
    } else {
        fp = foundation_from_bilinear(positive(f, "p_u", "system.foundation"), positive(f, "u_l", "system.foundation"));
        rc.foundation_source = "bilinear";
    }
    try {
        return make_system(ds, fp, L);
    } catch (const InvalidInput& e) {
        throw ConfigError("system", e.what(), line_of(s));
    }
}

inline MotionBlock parse_motion(const YAML::Node& m) {
    check_keys(m, "motion", {"D_max", "f_hz", "omega", "C_ph", "t_g", "cycles"});
    MotionBlock b;
    b.present = true;
    if (m["D_max"]) {
        b.D_max = number(m["D_max"], "motion.D_max");
        if (!(b.D_max >= 0.0)) throw ConfigError("motion.D_max", "must be >= 0", line_of(m["D_max"]));
    }
    if (m["f_hz"] && m["omega"]) throw ConfigError("motion", "give only one of f_hz or omega", line_of(m));
    if (m["f_hz"]) b.omega_f = 2.0 * std::numbers::pi * positive(m, "f_hz", "motion");
    if (m["omega"]) b.omega_f = positive(m, "omega", "motion");
    if (m["C_ph"]) b.C_ph = positive(m, "C_ph", "motion");
    if (m["t_g"] && m["cycles"]) throw ConfigError("motion", "give only one of t_g or cycles", line_of(m));
    if (m["t_g"]) b.t_g = positive(m, "t_g", "motion");
    if (m["cycles"]) b.cycles = positive(m, "cycles", "motion");
    b.line = line_of(m);
    return b;
}

inline AnalysisBlock parse_analysis(const YAML::Node& a) {
    check_keys(a, "analysis",
               {"n_modes", "omega_max", "modes", "f_list", "f_min", "f_max", "f_count", "refine_levels", "cycles",
                "t_end", "snapshot_times", "oracle", "fem_h", "oracle_modes", "steps_per_period", "max_dx",
                "truncation_factor", "w2_factor", "mode_cap", "out_x", "out_t", "mode_points", "freq_pct_bound",
                "mac_bound", "rms_pct_bound"});
    AnalysisBlock b;
    auto num = [&](const char* k, double& dst, bool pos) {
        if (!a[k]) return;
        dst = number(a[k], std::string("analysis.") + k);
        if (pos ? !(dst > 0.0) : !(dst >= 0.0))
            throw ConfigError(std::string("analysis.") + k, pos ? "must be > 0" : "must be >= 0", line_of(a[k]));
    };
    auto intg = [&](const char* k, int& dst, int min) {
        if (!a[k]) return;
        dst = integer(a[k], std::string("analysis.") + k);
        if (dst < min) throw ConfigError(std::string("analysis.") + k, "must be >= " + std::to_string(min), line_of(a[k]));
    };
    intg("n_modes", b.n_modes, 0);
    num("omega_max", b.omega_max, false);
    if (a["modes"]) b.modes = list<int>(a["modes"], "analysis.modes", integer);
    for (int k : b.modes)
        if (k < 1) throw ConfigError("analysis.modes", "indices are 1-based", line_of(a["modes"]));
    if (a["f_list"]) b.f_list = list<double>(a["f_list"], "analysis.f_list", number);
    for (double f : b.f_list)
        if (!(f > 0.0)) throw ConfigError("analysis.f_list", "frequencies must be > 0", line_of(a["f_list"]));
    num("f_min", b.f_min, true);
    num("f_max", b.f_max, true);
    intg("f_count", b.f_count, 1);
    if (b.f_min > b.f_max) throw ConfigError("analysis.f_min", "must not exceed f_max", line_of(a));
    intg("refine_levels", b.refine_levels, 0);
    num("cycles", b.cycles, true);
    num("t_end", b.t_end, false);
    if (a["snapshot_times"]) b.snapshot_times = list<double>(a["snapshot_times"], "analysis.snapshot_times", number);
    if (a["oracle"]) b.oracle = boolean(a["oracle"], "analysis.oracle");
    num("fem_h", b.fem_h, true);
    intg("oracle_modes", b.oracle_modes, 1);
    num("steps_per_period", b.steps_per_period, true);
    if (b.steps_per_period < 40.0)
        throw ConfigError("analysis.steps_per_period", "must be >= 40", line_of(a["steps_per_period"]));
    num("max_dx", b.max_dx, true);
    num("truncation_factor", b.truncation_factor, true);
    num("w2_factor", b.w2_factor, true);
    intg("mode_cap", b.mode_cap, 1);
    intg("out_x", b.out_x, 2);
    intg("out_t", b.out_t, 2);
    intg("mode_points", b.mode_points, 500);
    num("freq_pct_bound", b.freq_pct_bound, true);
    num("mac_bound", b.mac_bound, true);
    num("rms_pct_bound", b.rms_pct_bound, true);
    return b;
}

inline OutputBlock parse_output(const YAML::Node& o) {
    check_keys(o, "output", {"dir", "formats"});
    OutputBlock b;
    if (o["dir"]) b.dir = o["dir"].as<std::string>();
    if (o["formats"]) {
        b.csv = b.svg = false;
        for (const auto& s : list<std::string>(o["formats"], "output.formats",
                                               [](const YAML::Node& n, const std::string&) { return n.as<std::string>(); })) {
            if (s == "csv") b.csv = true;
            else if (s == "svg") b.svg = true;
            else throw ConfigError("output.formats", "unknown format '" + s + "'", line_of(o["formats"]));
        }
    }
    return b;
}

}  // namespace detail

inline RunConfig parse_config(const YAML::Node& root) {
    if (!root.IsMap()) throw ConfigError("", "top level must be a mapping");
    detail::check_keys(root, "", {"system", "motion", "analysis", "output"});
    RunConfig rc;
    if (!root["system"]) throw ConfigError("system", "required block missing");
    rc.system = detail::parse_system(root["system"], rc);
    if (root["motion"]) rc.motion = detail::parse_motion(root["motion"]);
    if (root["analysis"]) rc.analysis = detail::parse_analysis(root["analysis"]);
    if (root["output"]) rc.output = detail::parse_output(root["output"]);
    return rc;
}

inline RunConfig parse_config_string(const std::string& text) {
    try {
        return parse_config(YAML::Load(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError("", e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
    }
}

inline RunConfig load_config(const std::string& path) {
    try {
        return parse_config(YAML::LoadFile(path));
    } catch (const YAML::BadFile&) {
        throw ConfigError("", "cannot open '" + path + "'");
    } catch (const YAML::Exception& e) {
        throw ConfigError("", e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
    }
}

inline nlohmann::ordered_json to_json(const RunConfig& rc) {
    using nlohmann::ordered_json;
    const auto& s = rc.system.section;
    auto num = [](double v) -> ordered_json { return std::isinf(v) ? ordered_json("inf") : ordered_json(v); };
    ordered_json j;
    j["system"] = {{"source", rc.system_source},
                   {"L", rc.system.L},
                   {"m_l", rc.system.m_l},
                   {"section",
                    {{"D", s.D}, {"t", s.t}, {"A_b", s.A_b}, {"J", s.J}, {"r", s.r}, {"kappa", s.kappa}, {"E", s.E},
                     {"nu", s.nu}, {"G", s.G}}},
                   {"foundation", {{"source", rc.foundation_source}, {"k_l", rc.system.k_l()}}}};
    if (rc.system.foundation.p_u) j["system"]["foundation"]["p_u"] = *rc.system.foundation.p_u;
    if (rc.system.foundation.u_l) j["system"]["foundation"]["u_l"] = *rc.system.foundation.u_l;
    if (rc.motion.present) {
        const MotionBlock& m = rc.motion;
        j["motion"] = {{"D_max", m.D_max}, {"C_ph", num(m.C_ph)}};
        if (m.omega_f > 0.0) {
            j["motion"]["omega"] = m.omega_f;
            j["motion"]["f_hz"] = m.omega_f / (2.0 * std::numbers::pi);
        }
        if (m.t_g) j["motion"]["t_g"] = *m.t_g;
        if (m.cycles) j["motion"]["cycles"] = *m.cycles;
        if (m.omega_f > 0.0 && (m.t_g || m.cycles)) j["motion"]["t_g_resolved"] = m.motion().t_g;
    }
    const auto& a = rc.analysis;
    j["analysis"] = {{"n_modes", a.n_modes},
                     {"omega_max", a.omega_max},
                     {"modes", a.modes},
                     {"f_list", a.f_list},
                     {"f_min", a.f_min},
                     {"f_max", a.f_max},
                     {"f_count", a.f_count},
                     {"refine_levels", a.refine_levels},
                     {"cycles", a.cycles},
                     {"t_end", a.t_end},
                     {"snapshot_times", a.snapshot_times},
                     {"oracle", a.oracle},
                     {"fem_h", a.fem_h},
                     {"oracle_modes", a.oracle_modes},
                     {"steps_per_period", a.steps_per_period},
                     {"max_dx", a.max_dx},
                     {"truncation_factor", a.truncation_factor},
                     {"w2_factor", a.w2_factor},
                     {"mode_cap", a.mode_cap},
                     {"out_x", a.out_x},
                     {"out_t", a.out_t},
                     {"mode_points", a.mode_points},
                     {"freq_pct_bound", a.freq_pct_bound},
                     {"mac_bound", a.mac_bound},
                     {"rms_pct_bound", a.rms_pct_bound}};
    std::vector<std::string> formats;
    if (rc.output.csv) formats.push_back("csv");
    if (rc.output.svg) formats.push_back("svg");
    j["output"] = {{"dir", rc.output.dir}, {"formats", formats}};
    return j;
}

}  // namespace tbw::io
