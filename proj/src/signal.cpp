#include "ppgfit/signal.hpp"

#include "ppgfit/csv.hpp"
#include "ppgfit/errors.hpp"
#include "ppgfit/filters.hpp"

#include <cmath>

namespace ppgfit {

double SampledSignal::duration() const {
    return samples.empty() ? 0.0 : static_cast<double>(samples.size() - 1) / fs;
}

void SampledSignal::validate() const {
    if (!(fs > 0.0)) throw InputError("signal: sampling frequency must be positive");
    if (samples.empty()) throw InputError("signal: no samples");
    for (double v : samples)
        if (!std::isfinite(v)) throw InputError("signal: non-finite sample value");
}

SampledSignal load_signal_csv(const std::string& path, double fs_override) {
    const csv::Document doc = csv::read(path);
    if (doc.rows.empty()) throw InputError("signal: '" + path + "' has no data rows");

    double fs_comment = 0.0;
    for (const auto& c : doc.comments) {
        if (c.rfind("fs=", 0) == 0) fs_comment = std::strtod(c.c_str() + 3, nullptr);
    }

    const std::size_t ncols = doc.rows.front().size();
    SampledSignal sig;
    if (ncols >= 2) {
        std::vector<double> times;
        times.reserve(doc.rows.size());
        for (std::size_t i = 0; i < doc.rows.size(); ++i) {
            if (doc.rows[i].size() < 2)
                throw InputError("signal: row " + std::to_string(i + 1) + " has one column, expected two");
            times.push_back(csv::to_double(doc.rows[i][0], i));
            sig.samples.push_back(csv::to_double(doc.rows[i][1], i));
        }
        if (times.size() < 2) throw InputError("signal: need at least two rows to infer fs");
        const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
        if (!(dt > 0.0)) throw InputError("signal: timestamps must be increasing");
        for (std::size_t i = 1; i < times.size(); ++i) {
            if (std::fabs(times[i] - times[i - 1] - dt) > 1e-6)
                throw InputError("signal: non-uniform sample spacing at row " + std::to_string(i + 1));
        }
        sig.fs = 1.0 / dt;
        sig.t0 = times.front();
    } else {
        for (std::size_t i = 0; i < doc.rows.size(); ++i)
            sig.samples.push_back(csv::to_double(doc.rows[i][0], i));
        sig.fs = fs_override > 0.0 ? fs_override : fs_comment;
        if (!(sig.fs > 0.0))
            throw InputError("signal: single-column input needs fs via '# fs=<Hz>' or --fs");
        sig.t0 = 0.0;
    }
    sig.validate();
    return sig;
}

void save_signal_csv(const std::string& path, const SampledSignal& signal) {
    csv::Writer w(path, {"time", "value"});
    for (std::size_t k = 0; k < signal.size(); ++k)
        w.row({csv::format(signal.time_at(k)), csv::format(signal.samples[k])});
}

SampledSignal downsample(const SampledSignal& signal, double target_fs) {
    signal.validate();
    if (!(target_fs > 0.0)) throw InputError("downsample: target_fs must be positive");
    const double ratio = signal.fs / target_fs;
    const long m = std::lround(ratio);
    if (m < 1 || std::fabs(ratio - static_cast<double>(m)) > 1e-9)
        throw InputError("downsample: fs/target_fs must be an integer, got " + std::to_string(ratio));
    if (m == 1) return signal;

    const auto sos = butterworth_lowpass(8, 0.4 * target_fs, signal.fs);
    const std::vector<double> filtered = sosfiltfilt(sos, signal.samples);

    SampledSignal out;
    out.fs = target_fs;
    out.t0 = signal.t0;
    out.samples.reserve(signal.size() / static_cast<std::size_t>(m) + 1);
    for (std::size_t k = 0; k < filtered.size(); k += static_cast<std::size_t>(m))
        out.samples.push_back(filtered[k]);
    return out;
}

SampledSignal bandpass(const SampledSignal& signal, double f_hp, double f_lp) {
    signal.validate();
    if (!(f_hp >= 0.0) || !(f_hp < f_lp) || !(f_lp < 0.5 * signal.fs))
        throw InputError("bandpass: need 0 <= f_hp < f_lp < fs/2");

    std::vector<Biquad> sos = butterworth_lowpass(2, f_lp, signal.fs);
    if (f_hp > 0.0) {
        const auto hp = butterworth_highpass(2, f_hp, signal.fs);
        sos.insert(sos.end(), hp.begin(), hp.end());
    }

    // Low corners have long transients; pad proportionally to the slowest one.
    const double f_min = f_hp > 0.0 ? f_hp : f_lp;
    const long pad = static_cast<long>(std::ceil(3.0 * signal.fs / f_min));

    SampledSignal out = signal;
    out.samples = sosfiltfilt(sos, signal.samples, pad);
    return out;
}

} // namespace ppgfit
