#include "ppgfit/registration.hpp"

#include "ppgfit/errors.hpp"
#include "ppgfit/stats.hpp"

#include <algorithm>
#include <cmath>

namespace ppgfit {

PulseCurve::PulseCurve(std::vector<double> values, std::vector<double> offsets, double duration)
    : values_(std::move(values)), offsets_(std::move(offsets)), duration_(duration) {
    if (values_.size() < 2) throw InputError("registration: single-sample pulse cannot be interpolated");
    if (values_.size() != offsets_.size())
        throw InputError("registration: values/offsets size mismatch");
    if (!(duration_ > 0.0)) throw InputError("registration: non-positive pulse duration");
}

double PulseCurve::operator()(double u) const {
    const double tau = u * duration_;
    if (tau <= offsets_.front()) return values_.front();
    if (tau >= offsets_.back()) return values_.back();
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), tau);
    const std::size_t hi = static_cast<std::size_t>(it - offsets_.begin());
    const std::size_t lo = hi - 1;
    const double w = (tau - offsets_[lo]) / (offsets_[hi] - offsets_[lo]);
    return values_[lo] + w * (values_[hi] - values_[lo]);
}

double PiecewiseLinearWarp::operator()(double u) const {
    if (u <= m) return s * u / m;
    return s + (1.0 - s) * (u - m) / (1.0 - m);
}

double PiecewiseLinearWarp::inverse(double v) const {
    if (v <= s) return m * v / s;
    return m + (1.0 - m) * (v - s) / (1.0 - s);
}

PulseCurve resample_pulse(const Pulse& pulse) {
    if (pulse.excluded) throw InputError("registration: excluded pulse cannot be resampled");
    std::vector<double> offsets(pulse.values.size());
    const double dt = pulse.duration / static_cast<double>(pulse.length);
    for (std::size_t j = 0; j < offsets.size(); ++j) offsets[j] = static_cast<double>(j) * dt;
    return PulseCurve(pulse.values, std::move(offsets), pulse.duration);
}

double target_max_location(const std::vector<double>& history, double s_first) {
    if (history.empty()) return s_first;
    return stats::median(history);
}

RegisteredPulse warp_pulse(const PulseCurve& curve, double m, double s, int r) {
    if (r < 3) throw InputError("registration: grid size r must be >= 3");
    if (!(m > 0.0) || !(m < 1.0) || !(s > 0.0) || !(s < 1.0))
        throw InputError("registration: degenerate warp, m and s must lie in (0,1)");
    PiecewiseLinearWarp h{m, s};
    RegisteredPulse out;
    out.warp = h;
    out.target = m;
    out.max_frac = s;
    out.values.resize(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(r);
        out.values[static_cast<std::size_t>(j)] = curve(h(u));
    }
    return out;
}

std::vector<double> unwarp(const std::vector<double>& grid_values, const PiecewiseLinearWarp& warp,
                           const std::vector<double>& source_coords) {
    const std::size_t r = grid_values.size();
    if (r < 2) throw InputError("registration: unwarp needs >= 2 grid values");
    const double rr = static_cast<double>(r);
    std::vector<double> out;
    out.reserve(source_coords.size());
    for (double u : source_coords) {
        const double x = warp.inverse(u) * rr; // grid coordinate in units of 1/r
        if (x <= 0.0) {
            out.push_back(grid_values.front());
        } else if (x >= rr - 1.0) {
            out.push_back(grid_values.back());
        } else {
            const std::size_t lo = static_cast<std::size_t>(x);
            const double w = x - static_cast<double>(lo);
            out.push_back(grid_values[lo] + w * (grid_values[lo + 1] - grid_values[lo]));
        }
    }
    return out;
}

std::vector<double> median_target(const std::vector<std::vector<double>>& curves) {
    if (curves.empty()) throw InputError("registration: median target of no curves");
    const std::size_t r = curves.front().size();
    std::vector<double> out(r);
    std::vector<double> column(curves.size());
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t i = 0; i < curves.size(); ++i) column[i] = curves[i][j];
        out[j] = stats::median(column);
    }
    return out;
}

std::vector<RegisteredPulse> register_pulses(const PulseSet& pulses, int r) {
    std::vector<RegisteredPulse> out;
    std::vector<double> history;
    for (std::size_t id = 0; id < pulses.pulses.size(); ++id) {
        const Pulse& p = pulses.pulses[id];
        if (p.excluded) continue;
        const PulseCurve curve = resample_pulse(p);
        const double s = p.max_frac;
        const double m = target_max_location(history, s);
        RegisteredPulse reg;
        try {
            reg = warp_pulse(curve, m, s, r);
        } catch (const InputError&) {
            // Degenerate warp: sample the curve on the plain grid.
            reg.warp = PiecewiseLinearWarp::identity();
            reg.target = m;
            reg.max_frac = s;
            reg.values.resize(static_cast<std::size_t>(r));
            for (int j = 0; j < r; ++j)
                reg.values[static_cast<std::size_t>(j)] =
                    curve(static_cast<double>(j) / static_cast<double>(r));
        }
        reg.pulse_id = id;
        reg.duration = p.duration;
        reg.amplitude = p.amplitude;
        out.push_back(std::move(reg));
        history.push_back(s);
    }
    return out;
}

} // namespace ppgfit
