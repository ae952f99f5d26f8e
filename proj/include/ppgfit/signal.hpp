#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ppgfit {

// Uniformly sampled time series. Sample k sits at t0 + k/fs.
struct SampledSignal {
    std::vector<double> samples;
    double fs = 0.0;
    double t0 = 0.0;

    std::size_t size() const { return samples.size(); }
    double time_at(std::size_t k) const { return t0 + static_cast<double>(k) / fs; }
    double duration() const; // (n-1)/fs

    // fs > 0, non-empty, all finite. Throws InputError otherwise.
    void validate() const;
};

// Reads `time,value` rows (uniform spacing verified within 1e-6 s, fs inferred)
// or a single `value` column with fs taken from a `# fs=<Hz>` comment or the
// fs_override argument (CLI flag). An optional header row is skipped.
SampledSignal load_signal_csv(const std::string& path, double fs_override = 0.0);

void save_signal_csv(const std::string& path, const SampledSignal& signal);

// Anti-alias low-pass at 0.4*target_fs (zero phase), then integer decimation.
SampledSignal downsample(const SampledSignal& signal, double target_fs);

// Zero-phase band-pass from cascaded Butterworth sections (forward-backward).
// f_hp == 0 degenerates to a pure low-pass. Requires 0 <= f_hp < f_lp < fs/2.
SampledSignal bandpass(const SampledSignal& signal, double f_hp, double f_lp);

} // namespace ppgfit
