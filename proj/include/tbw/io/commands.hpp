#pragma once

// Command implementations behind the CLI. Each writes its files into `dir` and a
// resolved_config.json echo, and returns a process exit status.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "tbw/fem/compare.hpp"
#include "tbw/fem/dynamic.hpp"
#include "tbw/fem/model.hpp"
#include "tbw/io/config.hpp"
#include "tbw/io/csv.hpp"
#include "tbw/io/svg.hpp"
#include "tbw/response/modal.hpp"
#include "tbw/spectrum/roots.hpp"

namespace tbw::io {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kBoundExceeded = 3 };

namespace detail {

inline std::string fixed(double v, const char* f = "%.9g") {
    char b[64];
    std::snprintf(b, sizeof b, f, v);
    return b;
}

inline std::filesystem::path prepare(const RunConfig& rc, const std::string& dir) {
    std::filesystem::path p(dir);
    std::filesystem::create_directories(p);
    std::ofstream(p / "resolved_config.json") << to_json(rc).dump(2) << '\n';
    return p;
}

inline ResponseOptions response_options(const AnalysisBlock& a) {
    ResponseOptions o;
    o.n_modes = a.n_modes;
    o.truncation_factor = a.truncation_factor;
    o.w2_factor = a.w2_factor;
    o.mode_cap = a.mode_cap;
    o.max_dx = a.max_dx;
    o.steps_per_period = a.steps_per_period;
    o.t_end = a.t_end;
    o.out_x = a.out_x;
    o.out_t = a.out_t;
    o.snapshot_times = a.snapshot_times;
    return o;
}

inline std::vector<NaturalFrequency> spectrum_for(const RunConfig& rc, int at_least = 0) {
    const auto& a = rc.analysis;
    if (a.omega_max > 0.0 && at_least == 0) return find_natural_frequencies(rc.system, a.omega_max, 1000000);
    const int n = std::max(at_least, a.n_modes > 0 ? a.n_modes : 100);
    return find_natural_frequencies(rc.system, 0.0, n);
}

/// RMS of (a - b) as a percentage of max|a|.
inline double rms_pct(const std::vector<double>& a, const std::vector<double>& b) {
    double se = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        se += (a[i] - b[i]) * (a[i] - b[i]);
        peak = std::max(peak, std::abs(a[i]));
    }
    if (a.empty()) return 0.0;
    const double rms = std::sqrt(se / static_cast<double>(a.size()));
    return peak > 0.0 ? 100.0 * rms / peak : (rms > 0.0 ? 100.0 : 0.0);
}

inline std::string snapshot_name(double t) {
    std::string s = fixed(t, "%g");
    std::replace(s.begin(), s.end(), '.', 'p');
    return "snapshot_" + s + ".csv";
}

}  // namespace detail

inline int cmd_spectrum(const RunConfig& rc, const std::string& dir, std::ostream& log) {
    const auto p = detail::prepare(rc, dir);
    const CutoffFrequencies cut = cutoff_frequencies(rc.system);
    const auto roots = detail::spectrum_for(rc);
    if (rc.output.csv) {
        CsvWriter w((p / "spectrum.csv").string(), {"n", "omega_rad_s", "f_hz", "case_tag", "band", "parity"});
        for (std::size_t i = 0; i < roots.size(); ++i)
            w.row({static_cast<long long>(i + 1), roots[i].omega, roots[i].omega / (2.0 * std::numbers::pi),
                   std::string(to_string(roots[i].spectrum_case)), static_cast<long long>(roots[i].band),
                   std::string(to_string(roots[i].parity))});
    }
    if (rc.output.svg) {
        PlotSpec s;
        s.title = "Natural frequencies, L = " + detail::fixed(rc.system.L, "%g") + " m";
        s.x_label = "mode number n";
        s.y_label = "omega_n [rad/s]";
        Series ser{"omega_n", {}, {}, true};
        for (std::size_t i = 0; i < roots.size(); ++i) {
            ser.x.push_back(static_cast<double>(i + 1));
            ser.y.push_back(roots[i].omega);
        }
        s.series.push_back(ser);
        const double top = roots.empty() ? cut.w3 : roots.back().omega;
        s.lines.push_back({"w1", cut.w1, true});
        s.lines.push_back({"w2", cut.w2, true});
        if (cut.w3 <= 1.2 * top) s.lines.push_back({"w3", cut.w3, true});
        write_plot((p / "spectrum.svg").string(), s);
    }
    const BandCounts c = count_per_band(roots);
    log << "cut-offs [rad/s]: w1 = " << detail::fixed(cut.w1) << ", w2 = " << detail::fixed(cut.w2)
        << ", w3 = " << detail::fixed(cut.w3) << '\n';
    log << "modes per band (N1, N2, N3, N4) = (" << c.N1 << ", " << c.N2 << ", " << c.N3 << ", " << c.N4 << ") over "
        << roots.size() << " modes\n";
    return kOk;
}

inline int cmd_modes(const RunConfig& rc, const std::string& dir, std::vector<int> indices, std::ostream& log) {
    const auto p = detail::prepare(rc, dir);
    if (indices.empty()) indices = rc.analysis.modes;
    if (indices.empty()) indices = {1, 2, 3, 4, 5, 6};
    const int top = *std::max_element(indices.begin(), indices.end());
    if (top > rc.analysis.mode_cap)
        throw InvalidInput("mode index " + std::to_string(top) + " exceeds analysis.mode_cap = " +
                           std::to_string(rc.analysis.mode_cap));
    const auto roots = find_natural_frequencies(rc.system, 0.0, top);
    for (int k : indices)
        if (k < 1 || k > static_cast<int>(roots.size()))
            throw InvalidInput("mode index " + std::to_string(k) + " out of range 1.." + std::to_string(roots.size()));
    const auto shapes = mode_shapes(rc.system, roots);
    const int np = std::max(rc.analysis.mode_points, 500);
    std::map<int, PlotSpec> by_band;
    for (int k : indices) {
        const ModeShape& m = shapes[k - 1];
        std::vector<double> xs(np), ph(np), ps(np);
        for (int i = 0; i < np; ++i) {
            xs[i] = rc.system.L * i / (np - 1);
            const PhiPsi v = evaluate_mode(m, xs[i]);
            ph[i] = v.phi;
            ps[i] = v.psi;
        }
        if (rc.output.csv) {
            CsvWriter w((p / ("mode_" + std::to_string(k) + ".csv")).string(), {"x_m", "phi", "psi_rad_per_m"});
            for (int i = 0; i < np; ++i) w.row({xs[i], ph[i], ps[i]});
        }
        const int band = roots[k - 1].band;
        PlotSpec& s = by_band[band];
        s.title = "Mode shapes, band " + std::to_string(band);
        s.x_label = "x [m]";
        s.y_label = "phi (max |phi| = 1)";
        s.series.push_back({"n=" + std::to_string(k) + " (" + detail::fixed(m.omega, "%.6f") + " rad/s)", xs, ph, false});
        log << "mode " << k << ": omega = " << detail::fixed(m.omega) << " rad/s, " << to_string(m.spectrum_case)
            << ", " << to_string(m.parity) << (m.degenerate ? ", degenerate pair" : "") << '\n';
    }
    if (rc.output.svg)
        for (const auto& [band, s] : by_band) write_plot((p / ("modes_band" + std::to_string(band) + ".svg")).string(), s);
    return kOk;
}

inline int cmd_respond(const RunConfig& rc, const std::string& dir, bool oracle, std::ostream& log) {
    const auto p = detail::prepare(rc, dir);
    const GroundMotion gm = rc.motion.motion();
    const ResponseOptions o = detail::response_options(rc.analysis);
    const ResponseResult r = response_ratio(rc.system, gm, 0, 0.0, o);
    const ResponseField& f = r.field;

    if (rc.output.csv) {
        CsvWriter w((p / "response.csv").string(), {"t_s", "x_m", "y_m"});
        for (std::size_t j = 0; j < f.t_grid.size(); ++j)
            for (std::size_t i = 0; i < f.x_grid.size(); ++i)
                w.row({f.t_grid[j], f.x_grid[i], f.y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    }

    std::vector<fem::FESnapshot> fem_snaps;
    std::vector<double> fem_x;
    double fem_ratio = 0.0;
    if (oracle) {
        const fem::FEModel fm = fem::assemble(rc.system, rc.analysis.fem_h);
        const fem::FEModes modes = fem::eigen_solve(fm, std::min<int>(static_cast<int>(r.modes.size()), fm.dof()));
        fem::DynamicOptions d;
        d.steps_per_period = o.steps_per_period;
        d.t_end = o.t_end;
        d.snapshot_times = o.snapshot_times;
        const fem::FEResponse fr = fem::modal_dynamic(fm, modes, gm, -1, d);
        fem_snaps = fr.snapshots;
        fem_x = fr.x;
        fem_ratio = fr.ratio;
    }

    std::vector<double> rms;
    for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
        const Snapshot& s = r.snapshots[k];
        if (!rc.output.csv) continue;
        if (oracle && k < fem_snaps.size()) {
            const std::vector<double> ysa = evaluate_snapshot(r.modes, s, fem_x);
            const double e = detail::rms_pct(ysa, fem_snaps[k].y);
            rms.push_back(e);
            CsvWriter w((p / detail::snapshot_name(s.t)).string(),
                        {"x_m", "y_sa_m", "y_fem_m", "diff_m", "rms_diff_pct_of_peak"});
            for (std::size_t i = 0; i < fem_x.size(); ++i)
                w.row({fem_x[i], ysa[i], fem_snaps[k].y[i], ysa[i] - fem_snaps[k].y[i], e});
        } else {
            CsvWriter w((p / detail::snapshot_name(s.t)).string(), {"x_m", "y_m"});
            for (std::size_t i = 0; i < s.x.size(); ++i) w.row({s.x[i], s.y[i]});
        }
    }
    for (double t : o.snapshot_times)
        if (t > f.t_grid.back()) log << "snapshot t = " << t << " s lies beyond t_end and was skipped\n";

    {
        std::ofstream rt(p / "ratio.txt");
        rt << "U_p_max_m " << detail::fixed(f.U_p_max) << '\n'
           << "U_g_max_m " << detail::fixed(f.U_g_max) << '\n'
           << "ratio " << detail::fixed(f.ratio) << '\n'
           << "x_at_max_m " << detail::fixed(f.x_at_max) << '\n'
           << "t_at_max_s " << detail::fixed(f.t_at_max) << '\n'
           << "n_modes " << f.n_modes << '\n'
           << "dt_s " << detail::fixed(r.dt) << '\n';
        if (oracle) {
            rt << "fem_ratio " << detail::fixed(fem_ratio) << '\n';
            for (std::size_t k = 0; k < rms.size(); ++k)
                rt << "snapshot_rms_diff_pct t=" << detail::fixed(r.snapshots[k].t, "%g") << " " << detail::fixed(rms[k])
                   << '\n';
        }
    }
    if (rc.output.svg) {
        // thin the stored field to keep the file small
        const std::size_t sx = std::max<std::size_t>(1, f.x_grid.size() / 100), st = std::max<std::size_t>(1, f.t_grid.size() / 250);
        std::vector<double> xs, ts;
        for (std::size_t i = 0; i < f.x_grid.size(); i += sx) xs.push_back(f.x_grid[i]);
        for (std::size_t j = 0; j < f.t_grid.size(); j += st) ts.push_back(f.t_grid[j]);
        Eigen::MatrixXd z(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ts.size()));
        for (Eigen::Index i = 0; i < z.rows(); ++i)
            for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = f.y(i * sx, j * st);
        write_heatmap((p / "response.svg").string(), xs, ts, z, "Pipe displacement y(x, t) [m]", "x [m]", "t [s]");
    }
    log << "U_p,max / U_g,max = " << detail::fixed(f.ratio, "%.6f") << " (" << f.n_modes << " modes, max at x = "
        << detail::fixed(f.x_at_max, "%g") << " m, t = " << detail::fixed(f.t_at_max, "%.4f") << " s)\n";
    if (oracle) {
        log << "FEM oracle ratio = " << detail::fixed(fem_ratio, "%.6f") << '\n';
        for (std::size_t k = 0; k < rms.size(); ++k)
            log << "snapshot t = " << r.snapshots[k].t << " s: RMS difference " << detail::fixed(rms[k], "%.4f")
                << " % of peak\n";
    }
    return kOk;
}

inline int cmd_sweep(const RunConfig& rc, const std::string& dir, std::ostream& log) {
    const auto p = detail::prepare(rc, dir);
    const auto& a = rc.analysis;
    std::vector<double> fl = a.f_list.empty() ? default_sweep_frequencies(a.f_count, a.f_min, a.f_max) : a.f_list;
    const double C = rc.motion.present ? rc.motion.C_ph : std::numeric_limits<double>::infinity();
    ResponseOptions o = detail::response_options(a);
    o.snapshot_times.clear();
    o.t_end = 0.0;
    const SweepResult s = frequency_sweep(rc.system, fl, a.cycles, C, o, fl.size() > 1 ? a.refine_levels : 0);
    if (rc.output.csv) {
        CsvWriter w((p / "sweep.csv").string(), {"f_hz", "ratio"});
        for (const auto& pt : s.points) w.row({pt.f_hz, pt.ratio});
    }
    if (rc.output.svg) {
        PlotSpec ps;
        ps.title = "Peak displacement ratio, " + detail::fixed(a.cycles, "%g") + " cycles";
        ps.x_label = "f [Hz]";
        ps.y_label = "U_p,max / U_g,max";
        ps.log_x = true;
        Series ser{"ratio", {}, {}, s.points.size() < 3};
        for (const auto& pt : s.points) {
            ser.x.push_back(pt.f_hz);
            ser.y.push_back(pt.ratio);
        }
        ps.series.push_back(ser);
        ps.lines.push_back({"peak " + detail::fixed(s.peak_f_hz, "%.4g") + " Hz", s.peak_f_hz, false});
        write_plot((p / "sweep.svg").string(), ps);
    }
    std::ofstream(p / "peak.txt") << "peak_f_hz " << detail::fixed(s.peak_f_hz) << "\npeak_ratio "
                                  << detail::fixed(s.peak_ratio) << '\n';
    log << "peak ratio " << detail::fixed(s.peak_ratio, "%.4f") << " at f = " << detail::fixed(s.peak_f_hz, "%.5f")
        << " Hz (" << s.points.size() << " points)\n";
    return kOk;
}

inline int cmd_verify(const RunConfig& rc, const std::string& dir, std::ostream& log) {
    const auto p = detail::prepare(rc, dir);
    const auto& a = rc.analysis;
    const auto roots = find_natural_frequencies(rc.system, 0.0, a.oracle_modes);
    const auto sa = mode_shapes(rc.system, roots);
    const fem::FEModel fm = fem::assemble(rc.system, a.fem_h);
    const fem::FEModes fe = fem::eigen_solve(fm, std::min<int>(a.oracle_modes, fm.dof()));
    const fem::CompareReport rep = fem::compare(sa, fm, fe);

    std::ofstream out(p / "verify.txt");
    bool ok = true;
    out << "# mode omega_sa_rad_s omega_fem_rad_s pct_diff mac flag\n";
    for (const auto& pr : rep.pairs) {
        std::string flag;
        if (std::abs(pr.pct_diff) > a.freq_pct_bound) flag += " FREQ";
        if (!pr.degenerate && pr.mac < a.mac_bound) flag += " MAC";
        if (pr.degenerate) flag += " degenerate";
        if (flag.find("FREQ") != std::string::npos || flag.find("MAC") != std::string::npos) ok = false;
        out << pr.sa_index + 1 << ' ' << detail::fixed(pr.omega_sa) << ' ' << detail::fixed(pr.omega_fem) << ' '
            << detail::fixed(pr.pct_diff, "%.5f") << ' ' << detail::fixed(pr.mac, "%.6f") << flag << '\n';
    }
    if (rep.count_mismatch) {
        ok = false;
        out << "mode count mismatch: sa " << rep.n_sa << ", fem " << rep.n_fem << '\n';
    }
    out << "max_abs_pct " << detail::fixed(rep.max_abs_pct, "%.5f") << " (bound " << a.freq_pct_bound << ")\n"
        << "mean_abs_pct " << detail::fixed(rep.mean_abs_pct, "%.5f") << '\n'
        << "min_mac " << detail::fixed(rep.min_mac, "%.6f") << " (bound " << a.mac_bound << ")\n";

    if (rc.motion.present && rc.motion.omega_f > 0.0 && (rc.motion.t_g || rc.motion.cycles) &&
        !a.snapshot_times.empty()) {
        const GroundMotion gm = rc.motion.motion();
        ResponseOptions o = detail::response_options(a);
        o.snapshot_times = {a.snapshot_times.front()};
        const ResponseResult r = response_ratio(rc.system, gm, 0, 0.0, o);
        const fem::FEModes fd = fem::eigen_solve(fm, std::min<int>(static_cast<int>(r.modes.size()), fm.dof()));
        fem::DynamicOptions d;
        d.steps_per_period = o.steps_per_period;
        d.t_end = o.t_end;
        d.snapshot_times = o.snapshot_times;
        const fem::FEResponse fr = fem::modal_dynamic(fm, fd, gm, -1, d);
        if (r.snapshots.empty() || fr.snapshots.empty()) {
            ok = false;
            out << "transient snapshot outside the run window\n";
        } else {
            const double e = detail::rms_pct(evaluate_snapshot(r.modes, r.snapshots[0], fr.x), fr.snapshots[0].y);
            if (e > a.rms_pct_bound) ok = false;
            out << "transient_rms_pct t=" << r.snapshots[0].t << " " << detail::fixed(e, "%.5f") << " (bound "
                << a.rms_pct_bound << ")" << (e > a.rms_pct_bound ? " EXCEEDED" : "") << '\n';
            out << "ratio_sa " << detail::fixed(r.ratio) << "\nratio_fem " << detail::fixed(fr.ratio) << '\n';
        }
    }
    out << (ok ? "PASS" : "FAIL") << '\n';
    log << "verify: max |diff| " << detail::fixed(rep.max_abs_pct, "%.4f") << " %, min MAC "
        << detail::fixed(rep.min_mac, "%.6f") << " -> " << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kOk : kBoundExceeded;
}

}  // namespace tbw::io
