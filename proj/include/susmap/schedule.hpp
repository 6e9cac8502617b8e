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

#ifndef SUSMAP_SCHEDULE_HPP
#define SUSMAP_SCHEDULE_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "susmap/error.hpp"
#include "susmap/ising.hpp"

namespace susmap {

struct SchedulePoint {
    double time;   // microseconds
    double value;

    friend bool operator==(const SchedulePoint&, const SchedulePoint&) = default;
};

/// Time-anchored control curve, linearly interpolated between anchors.
/// Where two anchors share a time the later one wins (right-continuous).
class PiecewiseLinearSchedule {
public:
    PiecewiseLinearSchedule() = default;

    explicit PiecewiseLinearSchedule(std::vector<SchedulePoint> points) : points_(std::move(points)) {
        if (points_.size() < 2) throw InvalidInput("schedule needs at least 2 points");
        if (points_.front().time != 0.0) throw InvalidInput("schedule must start at time 0");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!std::isfinite(points_[i].time) || !std::isfinite(points_[i].value)) {
                throw InvalidInput("schedule point " + std::to_string(i) + " is not finite");
            }
            if (i > 0 && points_[i].time < points_[i - 1].time) {
                throw InvalidInput("schedule times decrease at point " + std::to_string(i));
            }
        }
    }

    const std::vector<SchedulePoint>& points() const noexcept { return points_; }
    double start_time() const { return points_.front().time; }
    double end_time() const { return points_.back().time; }

    double operator()(double t) const {
        if (t < start_time() || t > end_time()) {
            throw InvalidInput("time " + std::to_string(t) + " outside schedule range [" +
                               std::to_string(start_time()) + ", " + std::to_string(end_time()) + "]");
        }
        // first anchor strictly after t; the anchor before it is the active left end
        auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                   [](double x, const SchedulePoint& p) { return x < p.time; });
        if (it == points_.end()) return points_.back().value;
        const auto& right = *it;
        const auto& left = *(it - 1);
        const double w = (t - left.time) / (right.time - left.time);
        return left.value + w * (right.value - left.value);
    }

    /// Same curve with every anchor time multiplied by `factor`.
    PiecewiseLinearSchedule time_scaled(double factor) const {
        if (!(factor > 0.0)) throw InvalidInput("time scale must be positive");
        auto pts = points_;
        for (auto& p : pts) p.time *= factor;
        return PiecewiseLinearSchedule(std::move(pts));
    }

    /// Same anchors with every value multiplied by `factor`.
    PiecewiseLinearSchedule value_scaled(double factor) const {
        auto pts = points_;
        for (auto& p : pts) p.value *= factor;
        return PiecewiseLinearSchedule(std::move(pts));
    }

private:
    std::vector<SchedulePoint> points_;
};

inline PiecewiseLinearSchedule constant_schedule(double value, double duration) {
    return PiecewiseLinearSchedule({{0.0, value}, {duration, value}});
}

// ---------------------------------------------------------------------------
// h-gain validation

struct ScheduleViolation {
    enum class Kind { PointCount, Magnitude, Slope };
    Kind kind;
    std::size_t index;  // point index (for slopes: left end of the segment)
    std::string message;
};

struct HGainLimits {
    std::size_t max_points = 20;
    double max_magnitude = 3.0;
    double max_slope = 1000.0;  // per microsecond
};

inline std::vector<ScheduleViolation> validate_hgain_schedule(const PiecewiseLinearSchedule& sched,
                                                              const HGainLimits& limits = {}) {
    std::vector<ScheduleViolation> report;
    const auto& pts = sched.points();
    if (pts.size() > limits.max_points) {
        report.push_back({ScheduleViolation::Kind::PointCount, pts.size(),
                          std::to_string(pts.size()) + " points exceed the limit of " +
                              std::to_string(limits.max_points)});
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::abs(pts[i].value) > limits.max_magnitude) {
            report.push_back({ScheduleViolation::Kind::Magnitude, i,
                              "point " + std::to_string(i) + " has |g| = " +
                                  std::to_string(std::abs(pts[i].value)) + " > " +
                                  std::to_string(limits.max_magnitude)});
        }
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double dv = pts[i + 1].value - pts[i].value;
        const double dt = pts[i + 1].time - pts[i].time;
        if (dv == 0.0) continue;
        const double slope = dt > 0.0 ? std::abs(dv) / dt : INFINITY;
        if (slope > limits.max_slope) {
            report.push_back({ScheduleViolation::Kind::Slope, i,
                              "segment " + std::to_string(i) + " slope " + std::to_string(slope) +
                                  " per us exceeds " + std::to_string(limits.max_slope)});
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Annealing envelopes A(s), B(s), in GHz.

struct EnvelopeValue {
    double a;
    double b;
};

struct EnvelopeRow {
    double s;
    double a;
    double b;
};

/// A(s) = a_max (1-s)^2, B(s) = b_max s. Qualitative stand-in for a
/// device envelope: transverse field dominant early, exactly zero at s = 1.
struct AnalyticEnvelope {
    double a_max = 6.0;
    double b_max = 12.0;
};

class AnnealEnvelope {
public:
    /// Tabulated envelope; linear interpolation in s. Errors name the
    /// offending row as `first_row + position` (1-based by default).
    explicit AnnealEnvelope(std::vector<EnvelopeRow> rows, std::size_t first_row = 1)
        : repr_(std::move(rows)) {
        const auto& t = std::get<0>(repr_);
        const auto where = [&](std::size_t r) { return "envelope row " + std::to_string(first_row + r) + ": "; };
        if (t.size() < 2) throw InvalidInput("envelope table needs at least 2 rows");
        for (std::size_t r = 0; r < t.size(); ++r) {
            const auto& row = t[r];
            if (!std::isfinite(row.s) || !std::isfinite(row.a) || !std::isfinite(row.b)) {
                throw InvalidInput(where(r) + "value is not finite");
            }
            if (r == 0) continue;
            if (row.s <= t[r - 1].s) throw InvalidInput(where(r) + "s not strictly increasing");
            if (row.a > t[r - 1].a) throw InvalidInput(where(r) + "A increases");
            if (row.b < t[r - 1].b) throw InvalidInput(where(r) + "B decreases");
        }
        if (t.front().s != 0.0) throw InvalidInput(where(0) + "s must start at 0");
        if (t.back().s != 1.0) throw InvalidInput(where(t.size() - 1) + "s must end at 1");
    }

    explicit AnnealEnvelope(AnalyticEnvelope analytic) : repr_(analytic) {
        if (!(analytic.a_max >= 0.0) || !(analytic.b_max >= 0.0)) {
            throw InvalidInput("envelope amplitudes must be non-negative");
        }
    }

    EnvelopeValue operator()(double s) const {
        if (!(s >= 0.0 && s <= 1.0)) throw InvalidInput("anneal fraction " + std::to_string(s) + " outside [0,1]");
        if (const auto* an = std::get_if<AnalyticEnvelope>(&repr_)) {
            const double u = 1.0 - s;
            return {an->a_max * u * u, an->b_max * s};
        }
        const auto& t = std::get<0>(repr_);
        auto it = std::upper_bound(t.begin(), t.end(), s, [](double x, const EnvelopeRow& r) { return x < r.s; });
        if (it == t.end()) return {t.back().a, t.back().b};
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double w = (s - lo.s) / (hi.s - lo.s);
        return {lo.a + w * (hi.a - lo.a), lo.b + w * (hi.b - lo.b)};
    }

    bool is_analytic() const { return std::holds_alternative<AnalyticEnvelope>(repr_); }
    const std::variant<std::vector<EnvelopeRow>, AnalyticEnvelope>& representation() const { return repr_; }

private:
    std::variant<std::vector<EnvelopeRow>, AnalyticEnvelope> repr_;
};

inline AnnealEnvelope default_envelope() { return AnnealEnvelope(AnalyticEnvelope{}); }

inline AnnealEnvelope load_envelope(std::vector<EnvelopeRow> rows) { return AnnealEnvelope(std::move(rows)); }

/// Parses `s,A_GHz,B_GHz` CSV text. Row numbers in errors count the header as row 1.
inline AnnealEnvelope parse_envelope_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("envelope file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "s,A_GHz,B_GHz") throw InvalidInput("envelope header must be 's,A_GHz,B_GHz', got '" + line + "'");
    std::vector<EnvelopeRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f[3];
        for (auto& field : f) {
            if (!std::getline(ss, field, ',')) throw InvalidInput("envelope row " + std::to_string(lineno) + ": expected 3 fields");
        }
        try {
            rows.push_back({std::stod(f[0]), std::stod(f[1]), std::stod(f[2])});
        } catch (const std::exception&) {
            throw InvalidInput("envelope row " + std::to_string(lineno) + ": not a number");
        }
    }
    return AnnealEnvelope(std::move(rows), 2);  // data starts on file line 2
}

inline AnnealEnvelope load_envelope_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open envelope file " + path);
    return parse_envelope_csv(in);
}

// ---------------------------------------------------------------------------

/// Full description of one anneal. Schedules are written in nominal
/// microseconds over [0, annealing_time]; the simulator multiplies every
/// time by `time_scale` to obtain physical time.
struct AnnealSpec {
    PiecewiseLinearSchedule anneal_schedule;
    std::optional<PiecewiseLinearSchedule> hgain_schedule;
    double annealing_time = 100.0;
    std::optional<SpinState> initial_state;  // present for reverse annealing
    std::size_t num_reads = 1000;
    bool reinitialize_state = true;
    double time_scale = 1.0;

    bool is_reverse() const { return initial_state.has_value(); }

    double physical_duration() const { return annealing_time * time_scale; }

    /// Anneal fraction and h-gain at nominal time t.
    double s_at(double t) const { return anneal_schedule(t); }
    double g_at(double t) const { return hgain_schedule ? (*hgain_schedule)(t) : 1.0; }

    void validate() const {
        if (!(annealing_time > 0.0)) throw InvalidInput("annealing_time must be positive");
        if (!(time_scale > 0.0)) throw InvalidInput("time_scale must be positive");
        if (num_reads == 0) throw InvalidInput("num_reads must be positive");
        const auto& pts = anneal_schedule.points();
        if (pts.empty()) throw InvalidInput("anneal schedule is empty");
        if (pts.back().time != annealing_time) {
            throw InvalidInput("anneal schedule must end at annealing_time");
        }
        for (const auto& p : pts) {
            if (p.value < 0.0 || p.value > 1.0) throw InvalidInput("anneal fraction outside [0,1]");
        }
        if (is_reverse()) {
            if (pts.front().value != 1.0 || pts.back().value != 1.0) {
                throw InvalidInput("reverse anneal schedule must start and end at s = 1");
            }
        } else if (pts.front().value != 0.0 || pts.back().value != 1.0) {
            throw InvalidInput("forward anneal schedule must run from s = 0 to s = 1");
        }
        if (hgain_schedule && hgain_schedule->end_time() != annealing_time) {
            throw InvalidInput("h-gain schedule must span [0, annealing_time]");
        }
    }

    /// Union of all anchor times (nominal), sorted and de-duplicated.
    std::vector<double> breakpoints() const {
        std::vector<double> t;
        for (const auto& p : anneal_schedule.points()) t.push_back(p.time);
        if (hgain_schedule) {
            for (const auto& p : hgain_schedule->points()) t.push_back(p.time);
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        return t;
    }
};

/// Schedule shapes used by the replication experiments, in nominal
/// microseconds for a 100 us anneal.
struct AnnealPresets {
    std::vector<SchedulePoint> reverse_anchors{{0.0, 1.0}, {20.0, 0.65}, {80.0, 0.65}, {100.0, 1.0}};
    /// h-gain shape with unit plateau; multiplied by the plateau strength h.
    std::vector<SchedulePoint> hgain_shape{{0.0, 0.0}, {0.05, 0.0}, {0.1, 1.0},
                                           {99.1, 1.0}, {99.15, 0.0}, {100.0, 0.0}};
    std::vector<SchedulePoint> forward_anchors{{0.0, 0.0}, {100.0, 1.0}};
    double annealing_time = 100.0;
    double time_scale = 0.01;  // 100 us shapes played out over 1 us
    std::size_t num_reads = 1000;

    PiecewiseLinearSchedule reverse_schedule() const { return PiecewiseLinearSchedule(reverse_anchors); }
    PiecewiseLinearSchedule forward_schedule() const { return PiecewiseLinearSchedule(forward_anchors); }
    PiecewiseLinearSchedule hgain_schedule(double h) const {
        return PiecewiseLinearSchedule(hgain_shape).value_scaled(h);
    }

    AnnealSpec reverse_spec(const SpinState& initial, std::optional<double> h) const {
        AnnealSpec spec{reverse_schedule(), std::nullopt, annealing_time, initial, num_reads, true, time_scale};
        if (h) spec.hgain_schedule = hgain_schedule(*h);
        return spec;
    }

    AnnealSpec forward_spec() const {
        return AnnealSpec{forward_schedule(), std::nullopt, annealing_time, std::nullopt, num_reads, true, time_scale};
    }
};

}  // namespace susmap

#endif  // SUSMAP_SCHEDULE_HPP
