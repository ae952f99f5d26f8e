#include "ppgfit/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ppgfit {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double step, int max_evals,
                             double rel_ftol) {
    const std::size_t n = x0.size();
    NelderMeadResult result;
    result.x = x0;

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> values(n + 1);
    values[0] = eval(simplex[0]);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += step;
        values[i + 1] = eval(simplex[i + 1]);
    }

    auto order = [&]() {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> v2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[idx[i]];
            v2[i] = values[idx[i]];
        }
        simplex.swap(s2);
        values.swap(v2);
    };

    while (evals < max_evals) {
        order();
        const double spread = std::fabs(values[n] - values[0]);
        const double scale = std::fabs(values[0]) + std::fabs(values[n]) + 1e-300;
        if (2.0 * spread / scale < rel_ftol) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);

        auto blend = [&](double coef) {
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j)
                x[j] = centroid[j] + coef * (simplex[n][j] - centroid[j]);
            return x;
        };

        const std::vector<double> xr = blend(-1.0);
        const double fr = eval(xr);
        if (fr < values[0]) {
            const std::vector<double> xe = blend(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
        } else if (fr < values[n - 1]) {
            simplex[n] = xr;
            values[n] = fr;
        } else {
            const bool outside = fr < values[n];
            const std::vector<double> xc = blend(outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, values[n])) {
                simplex[n] = xc;
                values[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    values[i] = eval(simplex[i]);
                    if (evals >= max_evals) break;
                }
            }
        }
    }

    order();
    result.x = simplex[0];
    result.value = values[0];
    result.evaluations = evals;
    return result;
}

} // namespace ppgfit
