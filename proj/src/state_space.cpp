#include "ppgfit/state_space.hpp"

#include "ppgfit/errors.hpp"
#include "ppgfit/nelder_mead.hpp"
#include "ppgfit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ppgfit {

Eigen::MatrixXd Hyperparams::toeplitz(int p) const {
    Eigen::MatrixXd S(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) S(i, j) = std::pow(phi, std::abs(i - j));
    return S;
}

void Hyperparams::validate() const {
    if (sigma2 < 0.0 || sigma_eps2 < 0.0 || sigma_xi2 < 0.0)
        throw InputError("hyperparams: variances must be >= 0");
    if (!(std::fabs(phi) < 1.0)) throw InputError("hyperparams: |phi| must be < 1");
}

KalmanState KalmanState::init(int p, std::size_t window_cap) {
    KalmanState s;
    s.xhat = Eigen::VectorXd::Zero(p);
    s.gamma = Eigen::MatrixXd::Identity(p, p);
    s.hyper = Hyperparams{}; // 0.1 / 0.1 / 0.1, phi = 0
    s.window_cap = window_cap;
    return s;
}

Eigen::MatrixXd predictive_cov(const Eigen::MatrixXd& H, const KalmanState& state) {
    const int p = static_cast<int>(H.cols());
    const int r = static_cast<int>(H.rows());
    const Hyperparams& h = state.hyper;
    Eigen::MatrixXd core = h.sigma_eps2 * h.toeplitz(p) + state.gamma;
    core.diagonal().array() += h.sigma_xi2;
    Eigen::MatrixXd theta = H * core * H.transpose();
    theta.diagonal().array() += h.sigma2;
    return theta;
}

namespace {

Eigen::LLT<Eigen::MatrixXd> checked_llt(const Eigen::MatrixXd& theta) {
    Eigen::LLT<Eigen::MatrixXd> llt(theta);
    if (llt.info() != Eigen::Success)
        throw NumericalError("state-space: predictive covariance is not positive definite; "
                             "increase sigma2");
    const auto d = llt.matrixLLT().diagonal();
    const double dmax = d.maxCoeff(), dmin = d.minCoeff();
    if (!(dmin > 0.0) || (dmax / dmin) * (dmax / dmin) > 1e12)
        throw NumericalError("state-space: predictive covariance numerically singular "
                             "(condition > 1e12); increase sigma2");
    return llt;
}

} // namespace

KfStep kf_step(KalmanState& state, const Eigen::VectorXd& y, const Eigen::MatrixXd& H) {
    const int r = static_cast<int>(H.rows());
    const int p = static_cast<int>(H.cols());
    if (y.size() != r) throw InputError("kf_step: observation length does not match H");
    if (!y.allFinite()) throw InputError("kf_step: non-finite observation");

    const Eigen::MatrixXd theta = predictive_cov(H, state);
    const Eigen::LLT<Eigen::MatrixXd> llt = checked_llt(theta);

    Eigen::MatrixXd pred = state.gamma; // Gamma_{i-1} + sigma_xi2 I
    pred.diagonal().array() += state.hyper.sigma_xi2;

    // Gain with H^T (the printed equation's H is dimensionally impossible);
    // state update adds the gain-weighted innovation.
    const Eigen::MatrixXd gain = llt.solve(H * pred).transpose();
    const Eigen::VectorXd innovation = y - H * state.xhat;

    const Eigen::MatrixXd hgh_prev = H * state.gamma * H.transpose();

    state.xhat += gain * innovation;
    Eigen::MatrixXd g = (Eigen::MatrixXd::Identity(p, p) - gain * H) * pred;
    state.gamma = 0.5 * (g + g.transpose());

    state.window.push_back({innovation, hgh_prev});
    while (state.window.size() > state.window_cap) state.window.pop_front();

    return {innovation, theta};
}

double neg_log_lik(const std::vector<std::pair<Eigen::VectorXd, Eigen::MatrixXd>>& window) {
    if (window.empty()) throw InputError("neg_log_lik: empty window");
    double total = 0.0;
    for (const auto& [innov, theta] : window) {
        Eigen::LLT<Eigen::MatrixXd> llt(theta);
        if (llt.info() != Eigen::Success)
            throw NumericalError("neg_log_lik: non-positive-definite covariance in window");
        const Eigen::VectorXd solved = llt.solve(innov);
        double logdet = 0.0;
        for (int i = 0; i < theta.rows(); ++i)
            logdet += std::log(llt.matrixLLT()(i, i));
        total += innov.dot(solved) + 2.0 * logdet;
    }
    return total;
}

EstimateOutcome estimate_hyperparams(const KalmanState& state, const Eigen::MatrixXd& H,
                                     const EstimateOptions& opts) {
    EstimateOutcome out;
    out.hyper = state.hyper;
    if (state.window.size() < 2) return out;

    const int p = static_cast<int>(H.cols());
    const int r = static_cast<int>(H.rows());
    const Eigen::MatrixXd G = H * H.transpose();

    auto objective = [&](const std::vector<double>& x) -> double {
        const double ls2 = std::clamp(x[0], -46.0, 46.0);
        const double lc2 = std::clamp(x[1], -46.0, 46.0);
        const double at = std::clamp(x[2], -8.0, 8.0);
        const double sigma2 = std::exp(ls2);
        const double sigma_c2 = std::exp(lc2);
        const double phi = std::tanh(at);
        Hyperparams cand;
        cand.sigma2 = sigma2;
        cand.sigma_eps2 = opts.rho_split * sigma_c2;
        cand.sigma_xi2 = (1.0 - opts.rho_split) * sigma_c2;
        cand.phi = phi;

        const Eigen::MatrixXd M = H * cand.toeplitz(p) * H.transpose();
        double total = 0.0;
        for (const WindowEntry& e : state.window) {
            Eigen::MatrixXd theta = e.hgh + cand.sigma_eps2 * M + cand.sigma_xi2 * G;
            theta.diagonal().array() += cand.sigma2;
            Eigen::LLT<Eigen::MatrixXd> llt(theta);
            if (llt.info() != Eigen::Success) return std::numeric_limits<double>::max();
            const Eigen::VectorXd solved = llt.solve(e.innovation);
            double logdet = 0.0;
            for (int i = 0; i < r; ++i) logdet += std::log(llt.matrixLLT()(i, i));
            total += e.innovation.dot(solved) + 2.0 * logdet;
        }
        return total;
    };

    const double cur_c2 = std::max(state.hyper.sigma_c2(), 1e-12);
    const std::vector<double> x0 = {std::log(std::max(state.hyper.sigma2, 1e-12)),
                                    std::log(cur_c2),
                                    std::atanh(std::clamp(state.hyper.phi, -0.999999, 0.999999))};
    const NelderMeadResult nm = nelder_mead(objective, x0, opts.step, opts.max_evals, opts.rel_ftol);
    if (!std::isfinite(nm.value) || nm.value >= std::numeric_limits<double>::max()) {
        out.failed = true;
        return out;
    }

    const double sigma_c2 = std::exp(std::clamp(nm.x[1], -46.0, 46.0));
    out.hyper.sigma2 = std::exp(std::clamp(nm.x[0], -46.0, 46.0));
    out.hyper.sigma_eps2 = opts.rho_split * sigma_c2;
    out.hyper.sigma_xi2 = (1.0 - opts.rho_split) * sigma_c2;
    out.hyper.phi = std::tanh(std::clamp(nm.x[2], -8.0, 8.0));
    out.updated = true;
    return out;
}

FitResult fit(const std::vector<RegisteredPulse>& registered, const SplineSpec& spec,
              const FitOptions& options, std::size_t total_pulses) {
    if (registered.empty()) throw InputError("fit: no registered pulses");
    const int r = static_cast<int>(registered.front().values.size());
    for (const auto& reg : registered)
        if (static_cast<int>(reg.values.size()) != r)
            throw InputError("fit: registered pulses disagree on grid size");

    FitResult result;
    result.spec = spec;
    result.H = design_matrix(spec, r);
    result.grid_r = r;
    result.total_pulses = total_pulses;

    KalmanState state = KalmanState::init(spec.dim(), static_cast<std::size_t>(options.window));
    EstimateOptions eopts;
    eopts.rho_split = options.rho_split;

    for (std::size_t i = 0; i < registered.size(); ++i) {
        const Eigen::VectorXd y =
            Eigen::Map<const Eigen::VectorXd>(registered[i].values.data(), r);
        const KfStep step = kf_step(state, y, result.H);

        PulseFit pf;
        pf.pulse_id = registered[i].pulse_id;
        pf.xhat = state.xhat;
        pf.gamma = state.gamma;
        pf.innovation = step.innovation;
        pf.prediction = y - step.innovation;
        pf.std_residual = step.innovation.array() / step.theta.diagonal().array().sqrt();

        if (options.reopt_every > 0 && (i + 1) % static_cast<std::size_t>(options.reopt_every) == 0) {
            const EstimateOutcome est = estimate_hyperparams(state, result.H, eopts);
            if (est.updated)
                state.hyper = est.hyper;
            else if (est.failed)
                ++result.warnings;
        }
        pf.hyper_after = state.hyper;
        result.pulses.push_back(std::move(pf));
    }
    return result;
}

Reconstruction reconstruct(const FitResult& fit, const PulseSet& pulses,
                           const std::vector<RegisteredPulse>& registered,
                           const Envelope& envelope, const SampledSignal& original) {
    if (fit.pulses.size() != registered.size())
        throw InputError("reconstruct: fit and registration disagree");
    const double nan = std::numeric_limits<double>::quiet_NaN();

    Reconstruction rec;
    rec.fitted = original;
    rec.residual = original;
    std::fill(rec.fitted.samples.begin(), rec.fitted.samples.end(), nan);
    std::fill(rec.residual.samples.begin(), rec.residual.samples.end(), nan);

    for (std::size_t j = 0; j < fit.pulses.size(); ++j) {
        const PulseFit& pf = fit.pulses[j];
        const RegisteredPulse& reg = registered[j];
        const Pulse& pulse = pulses.pulses[pf.pulse_id];

        std::vector<double> coords(pulse.length);
        for (std::size_t k = 0; k < pulse.length; ++k)
            coords[k] = static_cast<double>(k) / static_cast<double>(pulse.length);
        std::vector<double> grid(pf.prediction.data(), pf.prediction.data() + pf.prediction.size());
        const std::vector<double> curve = unwarp(grid, reg.warp, coords);

        for (std::size_t k = 0; k < pulse.length; ++k) {
            const std::size_t idx = pulse.first_index + k;
            const double value = curve[k] * pulse.amplitude + envelope.at_sample(idx);
            rec.fitted.samples[idx] = value;
            rec.residual.samples[idx] = value - original.samples[idx];
        }
    }
    rec.rel_rmse = relative_rmse(rec.fitted.samples, original.samples);
    return rec;
}

double relative_rmse(const std::vector<double>& fitted, const std::vector<double>& original) {
    if (fitted.size() != original.size())
        throw InputError("relative_rmse: length mismatch");
    std::vector<double> o;
    double se = 0.0;
    for (std::size_t i = 0; i < fitted.size(); ++i) {
        if (!std::isfinite(fitted[i]) || !std::isfinite(original[i])) continue;
        o.push_back(original[i]);
        se += (fitted[i] - original[i]) * (fitted[i] - original[i]);
    }
    if (o.size() < 2) throw InputError("relative_rmse: fewer than two comparable samples");
    const double var = stats::variance(o);
    if (var == 0.0) throw NumericalError("relative_rmse: zero-variance original");
    return std::sqrt(se / static_cast<double>(o.size())) / std::sqrt(var);
}

QuantileBands shape_quantiles(const FitResult& fit, std::size_t first, std::size_t last,
                              const std::vector<double>& probs,
                              const std::vector<RegisteredPulse>& registered) {
    if (first > last || last >= fit.pulses.size())
        throw InputError("shape_quantiles: empty or out-of-range pulse range");
    for (double p : probs)
        if (!(p > 0.0) || !(p < 1.0)) throw InputError("shape_quantiles: probs must lie in (0,1)");

    const int r = fit.grid_r;
    const int p = fit.spec.dim();
    const std::size_t count = last - first + 1;

    QuantileBands out;
    out.probs = probs;
    out.mean_curve.assign(static_cast<std::size_t>(r), 0.0);
    out.model.assign(probs.size(), std::vector<double>(static_cast<std::size_t>(r), 0.0));
    out.empirical.assign(probs.size(), std::vector<double>(static_cast<std::size_t>(r), 0.0));

    for (std::size_t i = first; i <= last; ++i) {
        const PulseFit& pf = fit.pulses[i];
        const Eigen::VectorXd mu = fit.H * pf.xhat;
        Eigen::MatrixXd core = pf.gamma + pf.hyper_after.sigma_eps2 * pf.hyper_after.toeplitz(p);
        const Eigen::VectorXd var = (fit.H * core * fit.H.transpose()).diagonal();
        for (int k = 0; k < r; ++k) {
            out.mean_curve[static_cast<std::size_t>(k)] += mu[k] / static_cast<double>(count);
            const double sdev = std::sqrt(std::max(var[k], 0.0));
            for (std::size_t q = 0; q < probs.size(); ++q) {
                const double z = probs[q] == 0.5 ? 0.0 : stats::normal_quantile(probs[q]);
                out.model[q][static_cast<std::size_t>(k)] +=
                    (mu[k] + z * sdev) / static_cast<double>(count);
            }
        }
    }

    std::vector<double> column(count);
    for (int k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < count; ++i)
            column[i] = registered[first + i].values[static_cast<std::size_t>(k)];
        for (std::size_t q = 0; q < probs.size(); ++q)
            out.empirical[q][static_cast<std::size_t>(k)] = stats::quantile(column, probs[q]);
    }
    return out;
}

} // namespace ppgfit
