#pragma once

#include <functional>
#include <vector>

namespace ppgfit {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Downhill simplex with the standard 1 / 2 / 0.5 / 0.5 coefficients.
// Stops when the relative spread of the simplex values drops below rel_ftol
// or the evaluation budget is exhausted. The returned point is the best ever
// evaluated (never worse than x0).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double step, int max_evals,
                             double rel_ftol);

} // namespace ppgfit
