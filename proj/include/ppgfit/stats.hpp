#pragma once

#include <cstddef>
#include <vector>

namespace ppgfit::stats {

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x);   // denominator n-1
double sd(const std::vector<double>& x);

// Median with the mean-of-central-pair convention for even counts.
double median(std::vector<double> x);

// Linear-interpolation quantile (R type 7). prob in [0,1].
double quantile(std::vector<double> x, double prob);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Standard normal quantile (Acklam rational approximation, |err| < 1.2e-8).
double normal_quantile(double p);

// Sample autocorrelation for lags 0..max_lag.
std::vector<double> acf(const std::vector<double>& x, std::size_t max_lag);

// Partial autocorrelation via Durbin-Levinson, lags 1..max_lag.
std::vector<double> pacf(const std::vector<double>& x, std::size_t max_lag);

} // namespace ppgfit::stats
