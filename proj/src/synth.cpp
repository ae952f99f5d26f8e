#include "ppgfit/synth.hpp"

#include "ppgfit/csv.hpp"
#include "ppgfit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace ppgfit {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Box-Muller on explicit uniforms; keeps the stream identical across
// standard library implementations.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

private:
    double uniform_open() {
        // (0,1]: avoids log(0)
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
    }
    std::mt19937_64 rng_;
};

struct Template {
    std::vector<GaussianBump> bumps;
    double norm = 1.0; // divides heights so the clean maximum is 1

    double eval(double u, double width_mult) const {
        double v = 0.0;
        for (const GaussianBump& b : bumps) {
            const double w = b.width * width_mult;
            if (w <= 0.0) continue;
            const double d = (u - b.center) / w;
            v += b.height * std::exp(-0.5 * d * d);
        }
        return v / norm;
    }
};

Template make_template(const std::vector<GaussianBump>& bumps) {
    Template t;
    t.bumps = bumps;
    double peak = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        double v = 0.0;
        const double u = static_cast<double>(i) / 2000.0;
        for (const GaussianBump& b : bumps) {
            if (b.width <= 0.0) throw InputError("synth: bump width must be positive");
            const double d = (u - b.center) / b.width;
            v += b.height * std::exp(-0.5 * d * d);
        }
        peak = std::max(peak, v);
    }
    t.norm = peak > 0.0 ? peak : 1.0;
    return t;
}

} // namespace

std::string beat_label_name(BeatLabel label) {
    switch (label) {
        case BeatLabel::Sinus: return "N";
        case BeatLabel::PAC: return "PAC";
        case BeatLabel::PVC: return "PVC";
    }
    return "N";
}

SynthOutput generate(const SynthConfig& config) {
    if (!(config.fs > 0.0)) throw InputError("synth: fs must be positive");
    if (!(config.duration > 0.0)) throw InputError("synth: duration must be positive");
    if (!(config.mean_hr > 0.0)) throw InputError("synth: mean_hr must be positive");
    if (config.hr_jitter < 0.0) throw InputError("synth: hr_jitter must be >= 0");

    const Template tmpl = make_template(config.bumps);
    const bool has_beats = [&] {
        for (const GaussianBump& b : config.bumps)
            if (b.height != 0.0) return true;
        return false;
    }();

    std::map<std::size_t, BeatLabel> schedule;
    for (const PrematureBeat& pb : config.schedule) {
        if (pb.type == BeatLabel::Sinus)
            throw InputError("synth: premature schedule entries must be PAC or PVC");
        schedule[pb.beat_index] = pb.type;
    }

    auto profile_of = [&](BeatLabel l) -> const PrematureProfile& {
        return l == BeatLabel::PAC ? config.pac : config.pvc;
    };

    // A pulse colliding with its neighbours shows up as a large template value
    // at the interval edges.
    auto check_overlap = [&](double width_mult) {
        if (!has_beats) return;
        if (tmpl.eval(0.0, width_mult) > 0.5 || tmpl.eval(1.0, width_mult) > 0.5)
            throw InputError("synth: overlapping beats, interval shorter than template support");
    };
    check_overlap(1.0);
    check_overlap(config.pac.width_mult);
    check_overlap(config.pvc.width_mult);

    GaussianSource gauss(config.seed);
    const double base_ibi = 60.0 / config.mean_hr;
    const double dt = 1.0 / config.fs;

    // Beat schedule first so it does not depend on the noise settings.
    std::vector<double> onsets;   // snapped to the sample grid
    std::vector<double> intervals;
    std::vector<BeatLabel> labels;
    double t = 0.0;
    std::size_t k = 0;
    while (t < config.duration) {
        const auto it = schedule.find(k);
        labels.push_back(it == schedule.end() ? BeatLabel::Sinus : it->second);
        onsets.push_back(std::round(t * config.fs) / config.fs);

        double ibi = base_ibi + config.hr_jitter * gauss();
        const auto next = schedule.find(k + 1);
        if (next != schedule.end()) ibi *= profile_of(next->second).ibi_mult;
        if (it != schedule.end()) ibi *= profile_of(it->second).pause_mult;
        if (!(ibi > 2.0 * dt))
            throw InputError("synth: inter-beat interval collapsed to <= 2 samples; "
                             "reduce hr_jitter or the premature multipliers");
        intervals.push_back(ibi);
        t += ibi;
        ++k;
        if (t >= config.duration) break;
    }

    const std::size_t n = static_cast<std::size_t>(std::llround(config.duration * config.fs));
    SynthOutput out;
    out.signal.fs = config.fs;
    out.signal.t0 = 0.0;
    out.signal.samples.assign(n, 0.0);

    if (has_beats) {
        std::size_t beat = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ti = static_cast<double>(i) * dt;
            while (beat + 1 < onsets.size() && ti >= onsets[beat + 1]) ++beat;
            const double span = beat + 1 < onsets.size() ? onsets[beat + 1] - onsets[beat]
                                                         : intervals[beat];
            const double u = (ti - onsets[beat]) / span;
            const PrematureProfile* prof =
                labels[beat] == BeatLabel::Sinus ? nullptr : &profile_of(labels[beat]);
            const double amp = (1.0 + config.am_depth * std::sin(kTwoPi * config.am_freq * onsets[beat])) *
                               (prof ? prof->amp_mult : 1.0);
            out.signal.samples[i] = amp * tmpl.eval(u, prof ? prof->width_mult : 1.0);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double ti = static_cast<double>(i) * dt;
        out.signal.samples[i] += config.baseline_amp * std::sin(kTwoPi * config.baseline_freq * ti);
    }
    if (config.noise_sd > 0.0) {
        for (std::size_t i = 0; i < n; ++i) out.signal.samples[i] += config.noise_sd * gauss();
    }

    for (std::size_t b = 0; b < onsets.size(); ++b) {
        out.annotation.events.push_back({onsets[b], labels[b]});
        out.truth_minima.push_back(onsets[b]);
    }
    out.signal.validate();
    return out;
}

void save_annotation_csv(const std::string& path, const BeatAnnotation& annotation) {
    csv::Writer w(path, {"time", "label"});
    for (const BeatEvent& e : annotation.events)
        w.row({csv::format(e.time), beat_label_name(e.label)});
}

BeatAnnotation load_annotation_csv(const std::string& path, std::size_t* dropped) {
    const csv::Document doc = csv::read(path);
    BeatAnnotation ann;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < doc.rows.size(); ++i) {
        if (doc.rows[i].size() < 2)
            throw InputError("annotations: row " + std::to_string(i + 1) + " needs time,label");
        const double time = csv::to_double(doc.rows[i][0], i);
        const std::string& label = doc.rows[i][1];
        if (label == "AF" || label == "ART") {
            ++skipped;
            continue;
        }
        BeatLabel l;
        if (label == "N")
            l = BeatLabel::Sinus;
        else if (label == "PAC")
            l = BeatLabel::PAC;
        else if (label == "PVC")
            l = BeatLabel::PVC;
        else
            throw InputError("annotations: unknown label '" + label + "' at row " +
                             std::to_string(i + 1));
        if (!ann.events.empty() && time <= ann.events.back().time)
            throw InputError("annotations: times must be strictly increasing");
        ann.events.push_back({time, l});
    }
    if (dropped) *dropped = skipped;
    return ann;
}

} // namespace ppgfit
