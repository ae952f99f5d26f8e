#pragma once

#include "ppgfit/decomposition.hpp"
#include "ppgfit/registration.hpp"
#include "ppgfit/spline.hpp"

#include <Eigen/Dense>

#include <deque>
#include <vector>

namespace ppgfit {

struct Hyperparams {
    double sigma2 = 0.1;     // observation noise
    double sigma_eps2 = 0.1; // shape variability
    double sigma_xi2 = 0.1;  // state innovation
    double phi = 0.0;        // Sigma_{jk} = phi^|j-k|

    double sigma_c2() const { return sigma_eps2 + sigma_xi2; }
    Eigen::MatrixXd toeplitz(int p) const;
    void validate() const;
};

struct WindowEntry {
    Eigen::VectorXd innovation;
    Eigen::MatrixXd hgh; // H Gamma_{k-1} H^T frozen at step time
};

struct KalmanState {
    Eigen::VectorXd xhat;
    Eigen::MatrixXd gamma;
    Hyperparams hyper;
    std::deque<WindowEntry> window;
    std::size_t window_cap = 20;

    static KalmanState init(int p, std::size_t window_cap);
};

struct KfStep {
    Eigen::VectorXd innovation;
    Eigen::MatrixXd theta;
};

// Predictive covariance of the next observation given the current state.
Eigen::MatrixXd predictive_cov(const Eigen::MatrixXd& H, const KalmanState& state);

// One filter update. Appends the innovation and the frozen H Gamma H^T to the
// sliding window. Throws NumericalError when the predictive covariance is
// numerically singular (condition > 1e12); a larger sigma2 fixes that.
KfStep kf_step(KalmanState& state, const Eigen::VectorXd& y, const Eigen::MatrixXd& H);

// Sum over the window of innov^T Theta^{-1} innov + log|Theta| via Cholesky.
double neg_log_lik(const std::vector<std::pair<Eigen::VectorXd, Eigen::MatrixXd>>& window);

struct EstimateOptions {
    double rho_split = 0.5; // share of sigma_c2 assigned to sigma_eps2
    int max_evals = 200;
    double rel_ftol = 1e-6;
    double step = 0.25; // initial simplex step in the log/atanh space
};

struct EstimateOutcome {
    Hyperparams hyper;
    bool updated = false; // false when the window is too short
    bool failed = false;  // optimizer produced nothing usable
};

// Windowed-likelihood update of (sigma2, sigma_c2, phi) in the reparameterized
// space (log, log, atanh), warm-started from the current values. Theta is
// recomputed per candidate from the stored predicted-state covariances.
EstimateOutcome estimate_hyperparams(const KalmanState& state, const Eigen::MatrixXd& H,
                                     const EstimateOptions& opts);

struct FitOptions {
    int window = 20;      // s
    double rho_split = 0.5;
    int reopt_every = 1;  // re-estimate hyperparameters every k-th pulse
};

struct PulseFit {
    std::size_t pulse_id = 0; // index into the PulseSet
    Eigen::VectorXd xhat;
    Eigen::MatrixXd gamma;
    Eigen::VectorXd innovation;   // Y_i - H X_{i-1}
    Eigen::VectorXd std_residual; // innovation / sqrt(diag Theta_i)
    Eigen::VectorXd prediction;   // H X_{i-1}
    Hyperparams hyper_after;
};

struct FitResult {
    std::vector<PulseFit> pulses; // one entry per retained pulse, in order
    SplineSpec spec;
    Eigen::MatrixXd H;
    int grid_r = 0;
    std::size_t total_pulses = 0; // including excluded slots
    int warnings = 0;             // failed hyperparameter updates
};

FitResult fit(const std::vector<RegisteredPulse>& registered, const SplineSpec& spec,
              const FitOptions& options, std::size_t total_pulses);

struct Reconstruction {
    SampledSignal fitted;   // NaN where no retained pulse covers the sample
    SampledSignal residual; // fitted - original
    double rel_rmse = 0.0;
};

// Maps the per-pulse predictions back through the warps, restores amplitude
// and envelope, and differences against the original signal.
Reconstruction reconstruct(const FitResult& fit, const PulseSet& pulses,
                           const std::vector<RegisteredPulse>& registered,
                           const Envelope& envelope, const SampledSignal& original);

// RMSE(fitted - original) / SD(original), non-finite samples excluded pairwise.
double relative_rmse(const std::vector<double>& fitted, const std::vector<double>& original);

struct QuantileBands {
    std::vector<double> probs;
    std::vector<std::vector<double>> model;     // one curve per prob, length r
    std::vector<std::vector<double>> empirical; // pointwise data quantiles
    std::vector<double> mean_curve;             // H xhat averaged over the range
};

// Pointwise Gaussian quantiles of the fitted shape distribution plus the
// empirical quantiles of the registered pulses, over [first, last] inclusive
// (indices into fit.pulses).
QuantileBands shape_quantiles(const FitResult& fit, std::size_t first, std::size_t last,
                              const std::vector<double>& probs,
                              const std::vector<RegisteredPulse>& registered);

} // namespace ppgfit
