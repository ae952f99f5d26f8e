#pragma once

#include "ppgfit/signal.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ppgfit {

enum class BeatLabel { Sinus, PAC, PVC };

std::string beat_label_name(BeatLabel label); // N / PAC / PVC

struct BeatEvent {
    double time;
    BeatLabel label;
};

struct BeatAnnotation {
    std::vector<BeatEvent> events; // strictly increasing times
};

struct GaussianBump {
    double center; // fraction of the beat interval
    double width;
    double height;
};

// Per-type disturbance: the interval into the beat shrinks, the amplitude
// drops, the bump widths scale (the morphology signature surviving per-pulse
// normalization), and the following interval stretches.
struct PrematureProfile {
    double ibi_mult;
    double amp_mult;
    double pause_mult;
    double width_mult;
};

struct PrematureBeat {
    std::size_t beat_index;
    BeatLabel type; // PAC or PVC
};

struct SynthConfig {
    double fs = 64.0;
    double duration = 360.0; // seconds
    double mean_hr = 70.0;   // bpm
    double hr_jitter = 0.05; // SD of the inter-beat interval, seconds

    std::vector<GaussianBump> bumps = {{0.17, 0.055, 1.0}, {0.55, 0.16, 0.42}};

    double baseline_amp = 0.15;
    double baseline_freq = 0.25; // Hz, respiration-like wander
    double am_depth = 0.05;      // beat amplitude modulation
    double am_freq = 0.10;       // Hz
    double noise_sd = 0.01;

    std::vector<PrematureBeat> schedule;
    PrematureProfile pac{0.6, 0.8, 1.2, 0.8};
    PrematureProfile pvc{0.55, 0.6, 1.45, 1.4};

    std::uint64_t seed = 1;
};

struct SynthOutput {
    SampledSignal signal;
    BeatAnnotation annotation;        // every realized beat, labeled
    std::vector<double> truth_minima; // beat onset times (on the sample grid)
};

// Beats with jittered intervals, a per-beat bump template stretched over its
// own interval, sinusoidal baseline, amplitude modulation and Gaussian noise.
// Beat onsets are snapped to the sample grid so that truth minima coincide
// with samples. Deterministic for a fixed seed.
SynthOutput generate(const SynthConfig& config);

void save_annotation_csv(const std::string& path, const BeatAnnotation& annotation);
BeatAnnotation load_annotation_csv(const std::string& path, std::size_t* dropped = nullptr);

} // namespace ppgfit
