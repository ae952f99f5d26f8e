#include "ppgfit/stats.hpp"

#include "ppgfit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ppgfit::stats {

double mean(const std::vector<double>& x) {
    if (x.empty()) throw InputError("stats: mean of empty vector");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) {
    if (x.size() < 2) throw InputError("stats: variance needs >= 2 values");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

double sd(const std::vector<double>& x) { return std::sqrt(variance(x)); }

double median(std::vector<double> x) {
    if (x.empty()) throw InputError("stats: median of empty vector");
    const std::size_t n = x.size();
    std::sort(x.begin(), x.end());
    if (n % 2 == 1) return x[n / 2];
    return 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

double quantile(std::vector<double> x, double prob) {
    if (x.empty()) throw InputError("stats: quantile of empty vector");
    if (prob < 0.0 || prob > 1.0) throw InputError("stats: quantile prob outside [0,1]");
    std::sort(x.begin(), x.end());
    const double h = prob * static_cast<double>(x.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, x.size() - 1);
    const double w = h - static_cast<double>(lo);
    return (1.0 - w) * x[lo] + w * x[hi];
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw InputError("stats: pearson needs two equal-length vectors, n >= 2");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw NumericalError("stats: pearson with zero-variance input");
    return sxy / std::sqrt(sxx * syy);
}

double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) throw InputError("stats: normal_quantile needs p in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - plow) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

std::vector<double> acf(const std::vector<double>& x, std::size_t max_lag) {
    if (x.size() < 2) throw InputError("stats: acf needs >= 2 values");
    const std::size_t n = x.size();
    const double m = mean(x);
    double denom = 0.0;
    for (double v : x) denom += (v - m) * (v - m);
    if (denom == 0.0) throw NumericalError("stats: acf of constant series");
    std::vector<double> out;
    out.reserve(max_lag + 1);
    for (std::size_t lag = 0; lag <= max_lag && lag < n; ++lag) {
        double s = 0.0;
        for (std::size_t i = lag; i < n; ++i) s += (x[i] - m) * (x[i - lag] - m);
        out.push_back(s / denom);
    }
    return out;
}

std::vector<double> pacf(const std::vector<double>& x, std::size_t max_lag) {
    const std::vector<double> rho = acf(x, max_lag);
    const std::size_t m = rho.size() - 1;
    std::vector<double> out(m, 0.0);
    if (m == 0) return out;
    std::vector<double> phi_prev(m + 1, 0.0), phi(m + 1, 0.0);
    phi_prev[1] = rho[1];
    out[0] = rho[1];
    double v = 1.0 - rho[1] * rho[1];
    for (std::size_t k = 2; k <= m; ++k) {
        double num = rho[k];
        for (std::size_t j = 1; j < k; ++j) num -= phi_prev[j] * rho[k - j];
        const double phikk = (v > 0.0) ? num / v : 0.0;
        for (std::size_t j = 1; j < k; ++j) phi[j] = phi_prev[j] - phikk * phi_prev[k - j];
        phi[k] = phikk;
        out[k - 1] = phikk;
        v *= (1.0 - phikk * phikk);
        phi_prev = phi;
    }
    return out;
}

} // namespace ppgfit::stats
