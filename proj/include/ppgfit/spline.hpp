#pragma once

#include <Eigen/Dense>

#include <vector>

namespace ppgfit {

// Clamped B-spline basis on [0,1] with uniform interior knots.
// Dimension p = interior_knots + degree + 1.
struct SplineSpec {
    int degree = 3;
    int interior_knots = 10;
    std::vector<double> knots; // full clamped knot vector

    static SplineSpec clamped_uniform(int degree, int interior_knots);
    int dim() const { return interior_knots + degree + 1; }
};

// Evaluates all p basis functions at t in [0,1] (Cox-de Boor recurrence).
// At t = 1 the last basis function equals 1 (right-closure convention).
Eigen::VectorXd basis_eval(const SplineSpec& spec, double t);

// r x p matrix with row k = basis_eval at (k-1)/r; shared by all pulses after
// registration onto the common grid.
Eigen::MatrixXd design_matrix(const SplineSpec& spec, int r);

} // namespace ppgfit
