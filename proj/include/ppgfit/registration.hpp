#pragma once

#include "ppgfit/decomposition.hpp"

#include <cstddef>
#include <vector>

namespace ppgfit {

// Functional version of a normalized pulse: linear interpolation over the
// original sample offsets, with the domain rescaled to [0,1] by the pulse
// duration. Evaluation clamps outside the sampled range.
class PulseCurve {
public:
    PulseCurve(std::vector<double> values, std::vector<double> offsets, double duration);

    double operator()(double u) const;
    std::size_t sample_count() const { return values_.size(); }
    double duration() const { return duration_; }

private:
    std::vector<double> values_;
    std::vector<double> offsets_; // seconds from pulse start, increasing
    double duration_;
};

// Piecewise-linear bijection of [0,1] through (0,0), (m, s), (1,1).
struct PiecewiseLinearWarp {
    double m = 0.5;
    double s = 0.5;

    static PiecewiseLinearWarp identity() { return {0.5, 0.5}; }
    bool is_identity() const { return m == s; }

    double operator()(double u) const;
    double inverse(double v) const;
};

struct RegisteredPulse {
    std::vector<double> values;  // Y_{i,j} on the grid (j-1)/r
    PiecewiseLinearWarp warp;
    std::size_t pulse_id = 0;    // index into the PulseSet (includes excluded slots)
    double duration = 0.0;
    double amplitude = 0.0;
    double max_frac = 0.0;       // S_i
    double target = 0.0;         // m_i used for this pulse
};

// Builds the curve evaluator for a retained pulse. Throws on < 2 samples.
PulseCurve resample_pulse(const Pulse& pulse);

// Running median of the previous maximum locations; the first pulse anchors
// to its own maximum so the warp degenerates to the identity.
double target_max_location(const std::vector<double>& history, double s_first);

// Registers one pulse on the grid (j-1)/r. Throws InputError when m or s sits
// on the boundary; callers fall back to the identity warp.
RegisteredPulse warp_pulse(const PulseCurve& curve, double m, double s, int r);

// Reads the registered curve back at the source coordinates: value at source
// coordinate u is the grid interpolant evaluated at warp^{-1}(u).
std::vector<double> unwarp(const std::vector<double>& grid_values, const PiecewiseLinearWarp& warp,
                           const std::vector<double>& source_coords);

// Pointwise median across curves sampled on a common grid (the alignment
// target of the registration step; exported for diagnostics).
std::vector<double> median_target(const std::vector<std::vector<double>>& curves);

// Sequential driver over a PulseSet: resample, pick m_i, warp. Excluded pulses
// are skipped; degenerate warps fall back to the identity.
std::vector<RegisteredPulse> register_pulses(const PulseSet& pulses, int r);

} // namespace ppgfit
