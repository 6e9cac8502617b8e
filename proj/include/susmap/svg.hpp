// Copyright 2026 The susmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUSMAP_SVG_HPP
#define SUSMAP_SVG_HPP

// Bare-bones SVG plots for the report command. Output is deterministic.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "susmap/network.hpp"

namespace susmap::svg {

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return colors[i % 8];
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Axes {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    double left = 60, top = 30, width = 420, height = 300;

    static Axes fit(const std::vector<double>& xs, const std::vector<double>& ys) {
        Axes a;
        if (!xs.empty()) {
            a.x0 = *std::min_element(xs.begin(), xs.end());
            a.x1 = *std::max_element(xs.begin(), xs.end());
        }
        if (!ys.empty()) {
            a.y0 = *std::min_element(ys.begin(), ys.end());
            a.y1 = *std::max_element(ys.begin(), ys.end());
        }
        if (a.x1 == a.x0) a.x1 = a.x0 + 1;
        if (a.y1 == a.y0) a.y1 = a.y0 + 1;
        const double px = 0.05 * (a.x1 - a.x0), py = 0.05 * (a.y1 - a.y0);
        a.x0 -= px;
        a.x1 += px;
        a.y0 -= py;
        a.y1 += py;
        return a;
    }

    double sx(double x) const { return left + (x - x0) / (x1 - x0) * width; }
    double sy(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }

    std::string frame(const std::string& title, const std::string& xlabel, const std::string& ylabel) const {
        std::ostringstream os;
        os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width << "\" height=\"" << height
           << "\" fill=\"none\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << num(left + width / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
           << escape(title) << "</text>\n";
        os << "<text x=\"" << num(left + width / 2) << "\" y=\"" << num(top + height + 36)
           << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(xlabel) << "</text>\n";
        os << "<text x=\"14\" y=\"" << num(top + height / 2) << "\" transform=\"rotate(-90 14 "
           << num(top + height / 2) << ")\" text-anchor=\"middle\" font-size=\"12\">" << escape(ylabel)
           << "</text>\n";
        for (int t = 0; t <= 4; ++t) {
            const double xv = x0 + (x1 - x0) * t / 4.0;
            const double yv = y0 + (y1 - y0) * t / 4.0;
            os << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(top + height + 16)
               << "\" text-anchor=\"middle\" font-size=\"10\">" << num(xv) << "</text>\n";
            os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(yv) + 3)
               << "\" text-anchor=\"end\" font-size=\"10\">" << num(yv) << "</text>\n";
        }
        return os.str();
    }
};

inline std::string document(double w, double h, const std::string& body) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
       << w << " " << h << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body << "</svg>\n";
    return os.str();
}

struct Point {
    double x, y;
    std::size_t series;
};

inline std::string scatter(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<Point>& pts) {
    std::vector<double> xs, ys;
    for (const auto& p : pts) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    const Axes ax = Axes::fit(xs, ys);
    std::ostringstream body;
    body << ax.frame(title, xlabel, ylabel);
    for (const auto& p : pts) {
        body << "<circle cx=\"" << num(ax.sx(p.x)) << "\" cy=\"" << num(ax.sy(p.y)) << "\" r=\"3\" fill=\""
             << palette(p.series) << "\" fill-opacity=\"0.7\"/>\n";
    }
    return document(500, 380, body.str());
}

/// Overlaid curves, one color per group.
inline std::string curves(const std::string& title, const std::vector<double>& xs,
                          const std::vector<std::pair<std::size_t, std::vector<double>>>& lines) {
    std::vector<double> ys{0.0, 1.0};
    const Axes ax = Axes::fit(xs, ys);
    std::ostringstream body;
    body << ax.frame(title, "h-gain strength", "P_GS");
    for (const auto& [group, line] : lines) {
        body << "<polyline fill=\"none\" stroke=\"" << palette(group) << "\" stroke-opacity=\"0.6\" points=\"";
        for (std::size_t j = 0; j < line.size() && j < xs.size(); ++j) {
            body << num(ax.sx(xs[j])) << "," << num(ax.sy(line[j])) << " ";
        }
        body << "\"/>\n";
    }
    return document(500, 380, body.str());
}

inline std::string bars(const std::string& title, const std::string& ylabel, const std::vector<std::string>& labels,
                        const std::vector<double>& values) {
    std::vector<double> xs{0.0, static_cast<double>(std::max<std::size_t>(1, values.size()))};
    std::vector<double> ys = values;
    ys.push_back(0.0);
    Axes ax = Axes::fit(xs, ys);
    ax.y0 = std::min(0.0, ax.y0);
    std::ostringstream body;
    body << ax.frame(title, "", ylabel);
    const double slot = ax.width / static_cast<double>(std::max<std::size_t>(1, values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = ax.left + slot * (static_cast<double>(i) + 0.15);
        const double y = ax.sy(std::max(0.0, values[i]));
        const double h = std::abs(ax.sy(values[i]) - ax.sy(0.0));
        body << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(slot * 0.7) << "\" height=\""
             << num(h) << "\" fill=\"" << palette(i) << "\"/>\n";
        body << "<text x=\"" << num(x + slot * 0.35) << "\" y=\"" << num(ax.top + ax.height + 28)
             << "\" text-anchor=\"middle\" font-size=\"10\">" << escape(labels[i]) << "</text>\n";
    }
    return document(500, 380, body.str());
}

/// Fruchterman-Reingold layout, seeded; nodes shaded by energy.
inline std::string network(const std::string& title, const TransitionNetwork& net, std::uint64_t seed = 0) {
    const std::size_t n = net.nodes.size();
    std::vector<StateIndex> ids;
    std::map<StateIndex, std::size_t> pos;
    for (const auto& [s, e] : net.nodes) {
        pos[s] = ids.size();
        ids.push_back(s);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = u(rng);
        y[i] = u(rng);
    }
    const double k = n > 0 ? std::sqrt(4.0 / static_cast<double>(n)) : 1.0;
    double temp = 0.2;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> dx(n, 0.0), dy(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double ex = x[i] - x[j], ey = y[i] - y[j];
                const double d = std::max(1e-6, std::hypot(ex, ey));
                const double f = k * k / d;
                dx[i] += ex / d * f;
                dy[i] += ey / d * f;
                dx[j] -= ex / d * f;
                dy[j] -= ey / d * f;
            }
        }
        for (const auto& [key, e] : net.edges) {
            const std::size_t i = pos[key.first], j = pos[key.second];
            const double ex = x[i] - x[j], ey = y[i] - y[j];
            const double d = std::max(1e-6, std::hypot(ex, ey));
            const double f = d * d / k;
            dx[i] -= ex / d * f;
            dy[i] -= ey / d * f;
            dx[j] += ex / d * f;
            dy[j] += ey / d * f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double d = std::max(1e-9, std::hypot(dx[i], dy[i]));
            x[i] += dx[i] / d * std::min(d, temp);
            y[i] += dy[i] / d * std::min(d, temp);
        }
        temp *= 0.98;
    }
    std::vector<double> xs = x, ys = y;
    Axes ax = Axes::fit(xs, ys);
    ax.height = 420;
    ax.width = 420;
    ax.left = 40;
    double emin = 0, emax = 1;
    if (n > 0) {
        emin = emax = net.nodes.begin()->second;
        for (const auto& [s, e] : net.nodes) {
            emin = std::min(emin, e);
            emax = std::max(emax, e);
        }
    }
    std::ostringstream body;
    body << "<text x=\"250\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << escape(title) << "</text>\n";
    for (const auto& [key, e] : net.edges) {
        const std::size_t i = pos[key.first], j = pos[key.second];
        body << "<line x1=\"" << num(ax.sx(x[i])) << "\" y1=\"" << num(ax.sy(y[i])) << "\" x2=\"" << num(ax.sx(x[j]))
             << "\" y2=\"" << num(ax.sy(y[j])) << "\" stroke=\"#888\" stroke-width=\""
             << num(std::min(6.0, 0.5 + std::log1p(static_cast<double>(e.multiplicity)))) << "\"/>\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double e = net.nodes.at(ids[i]);
        const double t = emax > emin ? (e - emin) / (emax - emin) : 0.0;
        const int shade = static_cast<int>(40 + 180 * t);
        body << "<circle cx=\"" << num(ax.sx(x[i])) << "\" cy=\"" << num(ax.sy(y[i])) << "\" r=\"5\" fill=\"rgb("
             << shade << "," << shade << ",230)\"><title>state " << ids[i] << " E=" << num(e) << "</title></circle>\n";
    }
    return document(500, 500, body.str());
}

}  // namespace susmap::svg

#endif  // SUSMAP_SVG_HPP
