#include "ppgfit/filters.hpp"

#include "ppgfit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ppgfit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_design(int order, double fc, double fs) {
    if (order < 2 || order % 2 != 0)
        throw InputError("filters: Butterworth order must be even and >= 2");
    if (!(fc > 0.0) || !(fc < 0.5 * fs))
        throw InputError("filters: cutoff must satisfy 0 < fc < fs/2");
}

// Q of section k (1-based) for an even-order Butterworth cascade.
double section_q(int order, int k) {
    const double phi = (2.0 * k - 1.0) * kPi / (2.0 * order);
    return 1.0 / (2.0 * std::sin(phi));
}

} // namespace

std::vector<Biquad> butterworth_lowpass(int order, double fc, double fs) {
    check_design(order, fc, fs);
    const double w0 = 2.0 * kPi * fc / fs;
    const double cw = std::cos(w0), sw = std::sin(w0);
    std::vector<Biquad> sos;
    for (int k = 1; k <= order / 2; ++k) {
        const double alpha = sw / (2.0 * section_q(order, k));
        const double a0 = 1.0 + alpha;
        Biquad s{};
        s.b0 = (1.0 - cw) / 2.0 / a0;
        s.b1 = (1.0 - cw) / a0;
        s.b2 = s.b0;
        s.a1 = -2.0 * cw / a0;
        s.a2 = (1.0 - alpha) / a0;
        sos.push_back(s);
    }
    return sos;
}

std::vector<Biquad> butterworth_highpass(int order, double fc, double fs) {
    check_design(order, fc, fs);
    const double w0 = 2.0 * kPi * fc / fs;
    const double cw = std::cos(w0), sw = std::sin(w0);
    std::vector<Biquad> sos;
    for (int k = 1; k <= order / 2; ++k) {
        const double alpha = sw / (2.0 * section_q(order, k));
        const double a0 = 1.0 + alpha;
        Biquad s{};
        s.b0 = (1.0 + cw) / 2.0 / a0;
        s.b1 = -(1.0 + cw) / a0;
        s.b2 = s.b0;
        s.a1 = -2.0 * cw / a0;
        s.a2 = (1.0 - alpha) / a0;
        sos.push_back(s);
    }
    return sos;
}

namespace {

// Steady-state DF2T state for a constant input x0, so a constant signal
// passes through without any startup transient.
void steady_state(const Biquad& s, double x0, double& z1, double& z2) {
    const double denom = 1.0 + s.a1 + s.a2;
    const double yss = (denom != 0.0) ? x0 * (s.b0 + s.b1 + s.b2) / denom : 0.0;
    z2 = s.b2 * x0 - s.a2 * yss;
    z1 = s.b1 * x0 - s.a1 * yss + z2;
}

std::vector<double> run_sections(const std::vector<Biquad>& sos, std::vector<double> x) {
    for (const Biquad& s : sos) {
        double z1, z2;
        steady_state(s, x.empty() ? 0.0 : x.front(), z1, z2);
        for (double& v : x) {
            const double in = v;
            const double out = s.b0 * in + z1;
            z1 = s.b1 * in - s.a1 * out + z2;
            z2 = s.b2 * in - s.a2 * out;
            v = out;
        }
    }
    return x;
}

} // namespace

std::vector<double> sosfilt(const std::vector<Biquad>& sos, const std::vector<double>& x) {
    return run_sections(sos, x);
}

std::vector<double> sosfiltfilt(const std::vector<Biquad>& sos, const std::vector<double>& x,
                                long pad) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if (pad < 0) pad = 9 * static_cast<long>(sos.size()) + 3;
    pad = std::min<long>(pad, static_cast<long>(n) - 1);
    if (pad < 0) pad = 0;

    // Odd reflection about the endpoints.
    std::vector<double> ext;
    ext.reserve(n + 2 * static_cast<std::size_t>(pad));
    for (long i = pad; i >= 1; --i) ext.push_back(2.0 * x.front() - x[static_cast<std::size_t>(i)]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (long i = 1; i <= pad; ++i)
        ext.push_back(2.0 * x.back() - x[n - 1 - static_cast<std::size_t>(i)]);

    ext = run_sections(sos, std::move(ext));
    std::reverse(ext.begin(), ext.end());
    ext = run_sections(sos, std::move(ext));
    std::reverse(ext.begin(), ext.end());

    return std::vector<double>(ext.begin() + pad, ext.begin() + pad + static_cast<long>(n));
}

} // namespace ppgfit
