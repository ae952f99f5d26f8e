#include "ppgfit/config.hpp"

#include "ppgfit/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

namespace ppgfit {

const std::vector<std::string>& Config::known_keys() {
    static const std::vector<std::string> keys = {
        "signal.fs",
        "bandpass.low",
        "bandpass.high",
        "decomp.radius_s",
        "decomp.min_pulse_s",
        "registration.grid_r",
        "spline.degree",
        "spline.interior_knots",
        "fit.window_s",
        "fit.rho_split",
        "fit.reopt_every",
        "detect.lambda",
        "detect.rho",
        "detect.pi",
        "detect.match_tol_s",
        "svm.kernel",
        "svm.c",
        "svm.degree",
        "svm.coef",
        "svm.scale",
        "svm.features",
        "svm.pairing",
        "synth.fs",
        "synth.duration_s",
        "synth.mean_hr",
        "synth.hr_jitter_s",
        "synth.noise_sd",
        "synth.baseline_amp",
        "synth.baseline_freq_hz",
        "synth.am_depth",
        "synth.am_freq_hz",
        "synth.seed",
        "synth.template",
        "synth.premature",
        "synth.premature_every",
        "synth.pac_ibi",
        "synth.pac_amp",
        "synth.pac_pause",
        "synth.pac_width",
        "synth.pvc_ibi",
        "synth.pvc_amp",
        "synth.pvc_pause",
        "synth.pvc_width",
    };
    return keys;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open '" + path + "'");
    Config cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw InputError("config: line " + std::to_string(lineno) + " is not key = value");
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw InputError("config: unknown key '" + key + "'");
    values_[key] = value;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    char* end = nullptr;
    double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw InputError("config: key '" + key + "' is not a number: '" + it->second + "'");
    return v;
}

int Config::get_int(const std::string& key, int fallback) const {
    double v = get_double(key, static_cast<double>(fallback));
    int iv = static_cast<int>(v);
    if (static_cast<double>(iv) != v)
        throw InputError("config: key '" + key + "' is not an integer");
    return iv;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

} // namespace ppgfit
