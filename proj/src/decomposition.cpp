#include "ppgfit/decomposition.hpp"

#include "ppgfit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace ppgfit {

namespace {

// Sliding-window maximum (or minimum) over [i-radius, i+radius], clipped.
std::vector<double> window_extreme(const std::vector<double>& z, std::size_t radius, bool want_max) {
    const std::size_t n = z.size();
    std::vector<double> out(n);
    std::deque<std::size_t> dq;
    auto better = [&](double a, double b) { return want_max ? a >= b : a <= b; };
    std::size_t right = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= radius ? i - radius : 0;
        const std::size_t hi = std::min(n - 1, i + radius);
        while (right <= hi) {
            while (!dq.empty() && better(z[right], z[dq.back()])) dq.pop_back();
            dq.push_back(right);
            ++right;
        }
        while (dq.front() < lo) dq.pop_front();
        out[i] = z[dq.front()];
    }
    return out;
}

// Keeps the first and last index of every run of adjacent flagged samples.
std::vector<std::size_t> reduce_runs(const std::vector<std::size_t>& flagged) {
    std::vector<std::size_t> out;
    std::size_t i = 0;
    while (i < flagged.size()) {
        std::size_t j = i;
        while (j + 1 < flagged.size() && flagged[j + 1] == flagged[j] + 1) ++j;
        out.push_back(flagged[i]);
        if (j > i) out.push_back(flagged[j]);
        i = j + 1;
    }
    return out;
}

} // namespace

ExtremaSet find_extrema(const SampledSignal& signal, std::size_t radius) {
    signal.validate();
    if (radius < 1) throw InputError("find_extrema: radius must be >= 1");
    const std::vector<double>& z = signal.samples;
    const std::size_t n = z.size();
    if (n < 3) throw InputError("find_extrema: signal too short (need >= 3 samples)");

    const std::vector<double> wmax = window_extreme(z, radius, true);
    const std::vector<double> wmin = window_extreme(z, radius, false);

    std::vector<std::size_t> min_flags, max_flags;
    for (std::size_t i = 0; i < n; ++i) {
        if (z[i] == wmin[i]) min_flags.push_back(i);
        if (z[i] == wmax[i]) max_flags.push_back(i);
    }
    std::vector<std::size_t> minima = reduce_runs(min_flags);
    reduce_runs(max_flags); // maxima are re-derived per pulse below

    // The first and last observations count as minima by assumption.
    if (minima.empty() || minima.front() != 0) minima.insert(minima.begin(), 0);
    if (minima.back() != n - 1) minima.push_back(n - 1);

    ExtremaSet out;
    for (std::size_t idx : minima)
        out.minima.push_back({idx, signal.time_at(idx), z[idx]});

    // One maximum per pulse: earliest largest sample strictly between minima.
    for (std::size_t k = 0; k + 1 < minima.size(); ++k) {
        const std::size_t a = minima[k], b = minima[k + 1];
        if (b <= a + 1) continue;
        std::size_t best = a + 1;
        for (std::size_t i = a + 2; i < b; ++i)
            if (z[i] > z[best]) best = i;
        out.maxima.push_back({best, signal.time_at(best), z[best]});
    }
    return out;
}

Envelope::Envelope(std::vector<ExtremumPoint> knots) : knots_(std::move(knots)) {
    if (knots_.empty()) throw InputError("envelope: empty knot set");
}

double Envelope::at_sample(std::size_t k) const {
    auto it = std::lower_bound(knots_.begin(), knots_.end(), k,
                               [](const ExtremumPoint& p, std::size_t idx) { return p.index < idx; });
    if (it != knots_.end() && it->index == k) return it->value;
    if (it == knots_.begin()) return knots_.front().value;
    if (it == knots_.end()) return knots_.back().value;
    const ExtremumPoint& lo = *(it - 1);
    const ExtremumPoint& hi = *it;
    const double w = static_cast<double>(k - lo.index) / static_cast<double>(hi.index - lo.index);
    return lo.value + w * (hi.value - lo.value);
}

double Envelope::at_time(double t) const {
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                               [](const ExtremumPoint& p, double tt) { return p.time < tt; });
    if (it == knots_.begin()) return knots_.front().value;
    if (it == knots_.end()) return knots_.back().value;
    const ExtremumPoint& lo = *(it - 1);
    const ExtremumPoint& hi = *it;
    const double w = (t - lo.time) / (hi.time - lo.time);
    return lo.value + w * (hi.value - lo.value);
}

Envelope build_lower_envelope(const SampledSignal& signal, const ExtremaSet& extrema) {
    const std::vector<double>& z = signal.samples;
    const std::size_t n = z.size();
    if (extrema.minima.empty() || extrema.minima.front().index != 0 ||
        extrema.minima.back().index != n - 1)
        throw InputError("envelope: minima must include the first and last samples");

    std::vector<ExtremumPoint> knots = extrema.minima;
    while (true) {
        Envelope env(knots);
        double worst = 0.0;
        std::size_t worst_idx = n;
        for (std::size_t i = 0; i < n; ++i) {
            const double violation = env.at_sample(i) - z[i];
            if (violation > worst) { // strict: ties keep the earliest
                worst = violation;
                worst_idx = i;
            }
        }
        if (worst_idx == n) return env;
        ExtremumPoint p{worst_idx, signal.time_at(worst_idx), z[worst_idx]};
        knots.insert(std::lower_bound(knots.begin(), knots.end(), worst_idx,
                                      [](const ExtremumPoint& q, std::size_t idx) {
                                          return q.index < idx;
                                      }),
                     p);
    }
}

Decomposition decompose(const SampledSignal& signal, const ExtremaSet& extrema,
                        const Envelope& envelope) {
    Decomposition d{extrema, envelope, {}};
    d.shifted.resize(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i)
        d.shifted[i] = signal.samples[i] - envelope.at_sample(i);
    return d;
}

PulseSet segment(const std::vector<double>& shifted, const ExtremaSet& extrema,
                 const SampledSignal& signal, std::size_t l0) {
    if (l0 < 1) throw InputError("segment: l0 must be >= 1");
    PulseSet set;
    set.min_length = l0;
    set.fs = signal.fs;
    for (std::size_t k = 0; k + 1 < extrema.minima.size(); ++k) {
        const std::size_t a = extrema.minima[k].index;
        const std::size_t b = extrema.minima[k + 1].index;
        Pulse p;
        p.first_index = a;
        p.length = b - a;
        p.t_start = signal.time_at(a);
        p.duration = static_cast<double>(p.length) / signal.fs;

        std::size_t best = a;
        for (std::size_t i = a + 1; i < b; ++i)
            if (shifted[i] > shifted[best]) best = i;
        const double amplitude = shifted[best];

        if (p.length < l0 || amplitude == 0.0) {
            p.excluded = true;
        } else {
            p.amplitude = amplitude;
            p.max_time = signal.time_at(best);
            p.max_frac = static_cast<double>(best - a) / static_cast<double>(p.length);
            p.values.assign(shifted.begin() + static_cast<long>(a),
                            shifted.begin() + static_cast<long>(b));
            for (double& v : p.values) v /= amplitude;
            ++set.retained;
        }
        set.pulses.push_back(std::move(p));
    }
    if (set.retained == 0)
        throw InputError("segment: no pulse passed the exclusion criteria; segment unusable");
    return set;
}

} // namespace ppgfit
