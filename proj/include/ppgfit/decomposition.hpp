#pragma once

#include "ppgfit/signal.hpp"

#include <cstddef>
#include <vector>

namespace ppgfit {

struct ExtremumPoint {
    std::size_t index;
    double time;
    double value;
};

// Component I: local minima and the per-pulse maxima of the raw signal.
// First and last samples are always members of the minima.
struct ExtremaSet {
    std::vector<ExtremumPoint> minima;
    std::vector<ExtremumPoint> maxima;
};

// Piecewise-linear lower envelope through the extended minima set. Knots sit
// on samples, so evaluation interpolates in index space and is exact at knots.
class Envelope {
public:
    explicit Envelope(std::vector<ExtremumPoint> knots);

    double at_sample(std::size_t k) const;
    double at_time(double t) const;
    const std::vector<ExtremumPoint>& knots() const { return knots_; }

private:
    std::vector<ExtremumPoint> knots_;
};

struct Pulse {
    bool excluded = false;
    std::size_t first_index = 0; // sample index of the left minimum
    std::size_t length = 0;      // n_i: samples in [T_{i-1}, T_i)
    double t_start = 0.0;
    double duration = 0.0;       // t_i = length / fs

    // Retained pulses only:
    std::vector<double> values;  // normalized, max exactly 1
    double amplitude = 0.0;      // shifted local maximum
    double max_frac = 0.0;       // argmax position as fraction of duration
    double max_time = 0.0;
};

struct PulseSet {
    std::vector<Pulse> pulses;
    std::size_t min_length = 0;  // l0 used for exclusion
    std::size_t retained = 0;    // N_k
    double fs = 0.0;
};

struct Decomposition {
    ExtremaSet component1;
    Envelope envelope;
    std::vector<double> shifted; // V - envelope, >= 0 everywhere
};

// Greedy window comparator: sample i is flagged iff it is >= (<=) every sample
// within `radius` of it. Plateau runs keep their first and last index,
// endpoints are forced into the minima, and between consecutive minima the
// earliest largest sample becomes the pulse maximum.
ExtremaSet find_extrema(const SampledSignal& signal, std::size_t radius);

// Extends the minima knot set with the largest-violation sample until the
// interpolant lies at or below the signal everywhere.
Envelope build_lower_envelope(const SampledSignal& signal, const ExtremaSet& extrema);

Decomposition decompose(const SampledSignal& signal, const ExtremaSet& extrema,
                        const Envelope& envelope);

// Splits the shifted signal at the minima; pulses shorter than l0 or with zero
// shifted amplitude become excluded placeholders, the rest are normalized to
// unit maximum. Throws if nothing is retained.
PulseSet segment(const std::vector<double>& shifted, const ExtremaSet& extrema,
                 const SampledSignal& signal, std::size_t l0);

} // namespace ppgfit
