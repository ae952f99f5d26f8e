#include "ppgfit/spline.hpp"

#include "ppgfit/errors.hpp"

namespace ppgfit {

SplineSpec SplineSpec::clamped_uniform(int degree, int interior_knots) {
    if (degree < 0) throw InputError("spline: degree must be >= 0");
    if (interior_knots < 0) throw InputError("spline: interior knot count must be >= 0");
    SplineSpec spec;
    spec.degree = degree;
    spec.interior_knots = interior_knots;
    for (int i = 0; i <= degree; ++i) spec.knots.push_back(0.0);
    for (int i = 1; i <= interior_knots; ++i)
        spec.knots.push_back(static_cast<double>(i) / static_cast<double>(interior_knots + 1));
    for (int i = 0; i <= degree; ++i) spec.knots.push_back(1.0);
    return spec;
}

Eigen::VectorXd basis_eval(const SplineSpec& spec, double t) {
    if (t < 0.0 || t > 1.0) throw InputError("spline: evaluation point outside [0,1]");
    const int d = spec.degree;
    const int p = spec.dim();
    const std::vector<double>& knots = spec.knots;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(p);

    // Find the knot span [knots[k], knots[k+1]) containing t; t = 1 closes the
    // last span.
    int span = d; // first valid span index
    const int last_span = p - 1;
    if (t >= 1.0) {
        span = last_span;
    } else {
        while (span < last_span && t >= knots[static_cast<std::size_t>(span + 1)]) ++span;
    }

    // Triangular scheme: N[j] holds the value of basis function span-d+j.
    std::vector<double> N(static_cast<std::size_t>(d) + 1, 0.0);
    N[0] = 1.0;
    std::vector<double> left(static_cast<std::size_t>(d) + 1), right(static_cast<std::size_t>(d) + 1);
    for (int j = 1; j <= d; ++j) {
        left[static_cast<std::size_t>(j)] = t - knots[static_cast<std::size_t>(span + 1 - j)];
        right[static_cast<std::size_t>(j)] = knots[static_cast<std::size_t>(span + j)] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double denom = right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)];
            const double temp = denom != 0.0 ? N[static_cast<std::size_t>(r)] / denom : 0.0;
            N[static_cast<std::size_t>(r)] = saved + right[static_cast<std::size_t>(r + 1)] * temp;
            saved = left[static_cast<std::size_t>(j - r)] * temp;
        }
        N[static_cast<std::size_t>(j)] = saved;
    }
    for (int j = 0; j <= d; ++j) {
        const int idx = span - d + j;
        if (idx >= 0 && idx < p) out[idx] = N[static_cast<std::size_t>(j)];
    }
    return out;
}

Eigen::MatrixXd design_matrix(const SplineSpec& spec, int r) {
    if (r < 1) throw InputError("spline: design matrix needs r >= 1");
    const int p = spec.dim();
    Eigen::MatrixXd H(r, p);
    for (int k = 0; k < r; ++k)
        H.row(k) = basis_eval(spec, static_cast<double>(k) / static_cast<double>(r)).transpose();
    return H;
}

} // namespace ppgfit
