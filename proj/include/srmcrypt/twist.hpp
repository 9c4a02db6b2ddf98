#pragma once

#include <optional>
#include <vector>

#include "srmcrypt/common.hpp"
#include "srmcrypt/srm.hpp"
#include "srmcrypt/wavelet.hpp"

namespace srmcrypt {

struct SolverConfig {
    // l1 weight; when unset, lambda_scale * max|W^T Re(Phi^H y)|.
    std::optional<double> lambda;
    double lambda_scale = 0.001;
    double alpha_step = 1.8;
    double beta_step = 1.0;
    int max_iters = 300;
    double rel_tol = 1e-5;
    bool monotone = true;

    void validate() const;
};

// Wavelet coefficients of a real image.
struct CoeffField {
    Image values;
    WaveletSpec spec;
};

struct IterationRecord {
    int iteration = 0;
    double objective = 0.0;
    double residual = 0.0;  // ||y - Phi W x||_F
};

struct TwistResult {
    Image image;         // idwt2 of the final coefficients, clamped to [0,255]
    CoeffField coeffs;
    double lambda = 0.0;
    double step = 1.0;   // 1 / Lipschitz bound of the smooth term
    std::vector<IterationRecord> trace;
};

// Elementwise sign(v) * max(|v| - tau, 0).
Image soft_threshold(const Image& coeffs, double tau);

// 1/2 ||y - Phi idwt2(alpha)||^2 + lambda ||alpha||_1
double objective(const CoeffField& alpha, const Measurements& meas, const SrmOperator& op,
                 double lambda);

// Gradient of the smooth term: W^T Re(Phi^H (Phi W alpha - y)).
Image smooth_gradient(const CoeffField& alpha, const Measurements& meas, const SrmOperator& op);

// Upper bound on ||Phi W||^2 from power iteration on W^T W (||Phi|| <= 1).
double lipschitz_bound(Eigen::Index side, const WaveletSpec& spec);

// One denoising step Gamma(x) = soft(x - step * grad, step * lambda).
Image twist_denoise(const CoeffField& x, const Measurements& meas, const SrmOperator& op,
                    double lambda, double step);

// Two-step iterative shrinkage/thresholding for the l1-regularized
// synthesis problem above, warm-started from dwt2(Re(Phi^H y)).
TwistResult twist_solve(const Measurements& meas, const SrmOperator& op, const WaveletSpec& spec,
                        const SolverConfig& cfg);

} // namespace srmcrypt
