#pragma once

// Minimal standalone SVG charts: line/marker plots and a space-time heat map.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tbw/errors.hpp"

namespace tbw::io {

inline std::string xml_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '&': o += "&amp;"; break;
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
        }
    }
    return o;
}

struct Series {
    std::string label;
    std::vector<double> x, y;
    bool markers = false;
};

struct RefLine {
    std::string label;
    double value = 0.0;
    bool horizontal = true;
};

struct PlotSpec {
    std::string title, x_label, y_label;
    std::vector<Series> series;
    std::vector<RefLine> lines;
    bool log_x = false;
    int width = 800, height = 500;
};

namespace detail {

inline const char* palette(std::size_t i) {
    static const char* c[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return c[i % 8];
}

inline std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

inline std::vector<double> ticks(double lo, double hi, int n = 6) {
    std::vector<double> t;
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / n;
    const double p = std::pow(10.0, std::floor(std::log10(raw)));
    double step = p;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * p >= raw) {
            step = m * p;
            break;
        }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return t;
}

struct Frame {
    double x0, x1, y0, y1;
    double left = 80, right = 20, top = 40, bottom = 60;
    int w, h;
    bool log_x;
    double px(double x) const {
        const double a = log_x ? (std::log10(x) - std::log10(x0)) / (std::log10(x1) - std::log10(x0)) : (x - x0) / (x1 - x0);
        return left + a * (w - left - right);
    }
    double py(double y) const { return h - bottom - (y - y0) / (y1 - y0) * (h - top - bottom); }
};

inline void axes(std::ostringstream& o, const Frame& f, const std::string& title, const std::string& xl,
                 const std::string& yl) {
    o << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\"" << (f.w - f.left - f.right) << "\" height=\""
      << (f.h - f.top - f.bottom) << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << f.w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << xml_escape(title)
      << "</text>\n";
    o << "<text x=\"" << f.w / 2 << "\" y=\"" << f.h - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
      << xml_escape(xl) << "</text>\n";
    o << "<text x=\"18\" y=\"" << f.h / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << f.h / 2 << ")\">" << xml_escape(yl) << "</text>\n";
    std::vector<double> xt;
    if (f.log_x) {
        for (double d = std::pow(10.0, std::floor(std::log10(f.x0))); d <= f.x1 * 1.0000001; d *= 10.0)
            if (d >= f.x0 * 0.9999999) xt.push_back(d);
    } else {
        xt = ticks(f.x0, f.x1);
    }
    for (double t : xt)
        o << "<text x=\"" << f.px(t) << "\" y=\"" << f.h - f.bottom + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
          << fmt(t) << "</text>\n";
    for (double t : ticks(f.y0, f.y1))
        o << "<text x=\"" << f.left - 6 << "\" y=\"" << f.py(t) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(t)
          << "</text>\n";
}

inline void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << body;
}

}  // namespace detail

inline std::string render_plot(const PlotSpec& p) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& s : p.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (p.log_x && !(s.x[i] > 0.0)) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    for (const auto& l : p.lines) {
        if (l.horizontal) {
            y0 = std::min(y0, l.value);
            y1 = std::max(y1, l.value);
        }
    }
    if (x0 > x1) x0 = 0.0, x1 = 1.0;
    if (y0 > y1) y0 = 0.0, y1 = 1.0;
    if (x1 == x0) x0 -= 0.5 * std::max(1.0, std::abs(x0)), x1 += 0.5 * std::max(1.0, std::abs(x1));
    if (y1 == y0) y0 -= 0.5 * std::max(1.0, std::abs(y0)), y1 += 0.5 * std::max(1.0, std::abs(y1));
    const double pad = 0.04 * (y1 - y0);
    const detail::Frame f{x0, x1, y0 - pad, y1 + pad, 80, 20, 40, 60, p.width, p.height, p.log_x};

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << p.width << "\" height=\"" << p.height
      << "\" viewBox=\"0 0 " << p.width << " " << p.height << "\" font-family=\"sans-serif\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    detail::axes(o, f, p.title, p.x_label, p.y_label);
    for (std::size_t k = 0; k < p.lines.size(); ++k) {
        const auto& l = p.lines[k];
        if (l.horizontal) {
            const double y = f.py(l.value);
            o << "<line x1=\"" << f.left << "\" x2=\"" << p.width - f.right << "\" y1=\"" << y << "\" y2=\"" << y
              << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
            o << "<text x=\"" << p.width - f.right - 4 << "\" y=\"" << y - 4
              << "\" text-anchor=\"end\" font-size=\"11\" fill=\"gray\">" << xml_escape(l.label) << "</text>\n";
        } else if (l.value >= x0 && l.value <= x1) {
            const double x = f.px(l.value);
            o << "<line x1=\"" << x << "\" x2=\"" << x << "\" y1=\"" << f.top << "\" y2=\"" << p.height - f.bottom
              << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
            o << "<text x=\"" << x + 4 << "\" y=\"" << f.top + 14 << "\" font-size=\"11\" fill=\"gray\">"
              << xml_escape(l.label) << "</text>\n";
        }
    }
    for (std::size_t k = 0; k < p.series.size(); ++k) {
        const auto& s = p.series[k];
        const char* c = detail::palette(k);
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i)
                if (!p.log_x || s.x[i] > 0.0)
                    o << "<circle cx=\"" << f.px(s.x[i]) << "\" cy=\"" << f.py(s.y[i]) << "\" r=\"2.5\" fill=\"" << c
                      << "\"/>\n";
        } else if (!s.x.empty()) {
            o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                if (!p.log_x || s.x[i] > 0.0) o << f.px(s.x[i]) << "," << f.py(s.y[i]) << " ";
            o << "\"/>\n";
        }
        if (!s.label.empty())
            o << "<text x=\"" << f.left + 10 << "\" y=\"" << f.top + 16 + 15 * k << "\" font-size=\"12\" fill=\"" << c
              << "\">" << xml_escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

inline void write_plot(const std::string& path, const PlotSpec& p) { detail::write_file(path, render_plot(p)); }

/// Diverging colour map of z(i, j) over x (rows) and t (columns), symmetric about zero.
inline std::string render_heatmap(const std::vector<double>& x, const std::vector<double>& t, const Eigen::MatrixXd& z,
                                  const std::string& title, const std::string& x_label, const std::string& t_label,
                                  int width = 900, int height = 520) {
    if (x.empty() || t.empty()) throw InvalidInput("heat map needs non-empty grids");
    const double zmax = std::max(z.size() ? z.cwiseAbs().maxCoeff() : 0.0, 1e-300);
    const detail::Frame f{t.front(), t.back() > t.front() ? t.back() : t.front() + 1.0,
                          x.front(), x.back() > x.front() ? x.back() : x.front() + 1.0,
                          80, 110, 40, 60, width, height, false};
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
      << width << " " << height << "\" font-family=\"sans-serif\" shape-rendering=\"crispEdges\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto colour = [&](double v) {
        const double a = std::clamp(v / zmax, -1.0, 1.0);
        int r = 255, g = 255, b = 255;
        if (a >= 0) g = b = static_cast<int>(255 * (1.0 - a));
        else r = g = static_cast<int>(255 * (1.0 + a));
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };
    const std::size_t nx = x.size(), nt = t.size();
    for (std::size_t j = 0; j < nt; ++j) {
        const double ta = j == 0 ? t[0] : 0.5 * (t[j - 1] + t[j]);
        const double tb = j + 1 == nt ? t[j] : 0.5 * (t[j] + t[j + 1]);
        for (std::size_t i = 0; i < nx; ++i) {
            const double xa = i == 0 ? x[0] : 0.5 * (x[i - 1] + x[i]);
            const double xb = i + 1 == nx ? x[i] : 0.5 * (x[i] + x[i + 1]);
            const double X = f.px(ta), W = std::max(f.px(tb) - X, 0.5);
            const double Y = f.py(xb), H = std::max(f.py(xa) - Y, 0.5);
            o << "<rect x=\"" << X << "\" y=\"" << Y << "\" width=\"" << W << "\" height=\"" << H << "\" fill=\""
              << colour(z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) << "\"/>\n";
        }
    }
    detail::axes(o, f, title, t_label, x_label);
    const double lx = width - 80;
    for (int k = 0; k <= 20; ++k) {
        const double v = zmax * (1.0 - k / 10.0);
        o << "<rect x=\"" << lx << "\" y=\"" << 40 + k * 20 << "\" width=\"20\" height=\"20\" fill=\"" << colour(v)
          << "\"/>\n";
        if (k % 5 == 0)
            o << "<text x=\"" << lx + 26 << "\" y=\"" << 54 + k * 20 << "\" font-size=\"11\">" << detail::fmt(v)
              << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

inline void write_heatmap(const std::string& path, const std::vector<double>& x, const std::vector<double>& t,
                          const Eigen::MatrixXd& z, const std::string& title, const std::string& x_label,
                          const std::string& t_label) {
    detail::write_file(path, render_heatmap(x, t, z, title, x_label, t_label));
}

}  // namespace tbw::io
