#pragma once

#include <vector>

namespace ppgfit {

// One second-order section, direct form II transposed.
struct Biquad {
    double b0, b1, b2;
    double a1, a2; // a0 normalized to 1
};

// Butterworth designs via the RBJ bilinear biquads with the analog prototype's
// per-section Q values. `order` must be even and >= 2; fc in Hz, fc < fs/2.
std::vector<Biquad> butterworth_lowpass(int order, double fc, double fs);
std::vector<Biquad> butterworth_highpass(int order, double fc, double fs);

// Single forward pass with steady-state initial conditions scaled to x[0].
std::vector<double> sosfilt(const std::vector<Biquad>& sos, const std::vector<double>& x);

// Zero-phase forward-backward filtering with odd-reflection padding.
// pad < 0 selects a default based on the section count.
std::vector<double> sosfiltfilt(const std::vector<Biquad>& sos, const std::vector<double>& x,
                                long pad = -1);

} // namespace ppgfit
