#pragma once

#include <cstddef>
#include <vector>

namespace ppgfit {

struct SvmKernel {
    enum class Type { Linear, Polynomial, Sigmoid };
    Type type = Type::Linear;
    int degree = 3;     // polynomial
    double coef = 1.0;  // polynomial / sigmoid shift
    double scale = 0.0; // sigmoid slope; 0 selects 1/n_features

    double operator()(const std::vector<double>& a, const std::vector<double>& b) const;
};

// One soft-margin binary machine (dual, trained by SMO with maximal-violating
// pair selection). Stores only the support vectors.
struct BinarySvm {
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual; // alpha_i * y_i
    double bias = 0.0;

    double decision(const std::vector<double>& x, const SvmKernel& kernel) const;
};

struct SvmModel {
    SvmKernel kernel;
    double c = 1.0;
    std::vector<int> classes;            // sorted distinct labels
    std::vector<BinarySvm> machines;     // 1 for binary, one-vs-rest otherwise
    std::vector<double> feature_mean;    // training standardization
    std::vector<double> feature_scale;
};

// Trains on rows of `features` with integer labels (2 classes directly,
// 3+ one-vs-rest). Features are standardized by training statistics.
// The seed is accepted for interface stability; the working-set selection is
// already deterministic. Throws on a single-class training set.
SvmModel svm_train(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels, const SvmKernel& kernel, double c,
                   unsigned seed = 0);

std::vector<int> svm_predict(const SvmModel& model, const std::vector<std::vector<double>>& features);

// Per-machine decision values for a single example (standardized internally).
std::vector<double> svm_decision(const SvmModel& model, const std::vector<double>& x);

// Maximum KKT violation of the trained machine on its training set; used by
// tests to check convergence quality.
double svm_kkt_violation(const std::vector<std::vector<double>>& features,
                         const std::vector<int>& labels, const SvmModel& model);

// Leave-one-out predictions (retrains one model per fold).
std::vector<int> svm_loo_predict(const std::vector<std::vector<double>>& features,
                                 const std::vector<int>& labels, const SvmKernel& kernel,
                                 double c);

} // namespace ppgfit
