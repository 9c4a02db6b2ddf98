#include "srmcrypt/twist.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace srmcrypt {

namespace {

void check_shapes(const CoeffField& alpha, const Measurements& meas, const SrmOperator& op)
{
    require(meas.side == op.side(), "measurement side does not match operator side");
    require(meas.values.rows() == op.measurements() && meas.values.cols() == op.side(),
            "measurement shape does not match operator");
    require(alpha.values.rows() == op.side() && alpha.values.cols() == op.side(),
            "coefficient shape does not match operator side");
}

// y - Phi W x
ComplexField residual(const Image& coeffs, const WaveletSpec& spec, const Measurements& meas,
                      const SrmOperator& op)
{
    return meas.values - op.forward(idwt2(coeffs, spec));
}

// W^T Re(Phi^H r), i.e. the negative smooth gradient for r = y - Phi W x.
Image back_project(const ComplexField& r, const WaveletSpec& spec, const SrmOperator& op)
{
    return idwt2_transpose(op.adjoint(r).real(), spec);
}

double value(const Image& coeffs, const ComplexField& r, double lambda)
{
    return 0.5 * r.squaredNorm() + lambda * coeffs.lpNorm<1>();
}

} // namespace

void SolverConfig::validate() const
{
    require(!lambda || *lambda > 0.0, "solver lambda must be > 0");
    require(lambda_scale > 0.0, "solver lambda_scale must be > 0");
    require(alpha_step > 0.0, "solver alpha_step must be > 0");
    require(beta_step > 0.0 && beta_step <= 2.0, "solver beta_step must lie in (0,2]");
    require(max_iters >= 1, "solver max_iters must be >= 1");
    require(rel_tol > 0.0, "solver rel_tol must be > 0");
}

Image soft_threshold(const Image& coeffs, double tau)
{
    require(tau >= 0.0, "soft_threshold: tau must be >= 0");
    return coeffs.unaryExpr([tau](double v) {
        const double mag = std::abs(v) - tau;
        return mag > 0.0 ? std::copysign(mag, v) : 0.0;
    });
}

double objective(const CoeffField& alpha, const Measurements& meas, const SrmOperator& op,
                 double lambda)
{
    check_shapes(alpha, meas, op);
    return value(alpha.values, residual(alpha.values, alpha.spec, meas, op), lambda);
}

Image smooth_gradient(const CoeffField& alpha, const Measurements& meas, const SrmOperator& op)
{
    check_shapes(alpha, meas, op);
    return -back_project(residual(alpha.values, alpha.spec, meas, op), alpha.spec, op);
}

double lipschitz_bound(Eigen::Index side, const WaveletSpec& spec)
{
    static std::mutex mutex;
    static std::map<std::pair<Eigen::Index, int>, double> cache;
    std::lock_guard lock(mutex);
    const auto key = std::make_pair(side, spec.levels);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    Image v(side, side);
    for (Eigen::Index r = 0; r < side; ++r)
        for (Eigen::Index c = 0; c < side; ++c)
            v(r, c) = 1.0 + 0.5 * std::sin(static_cast<double>(r * 7 + c * 13 + 1));
    v /= v.norm();
    double eig = 0.0;
    for (int it = 0; it < 100; ++it) {
        Image w = idwt2_transpose(idwt2(v, spec), spec);
        eig = w.norm();
        v = w / eig;
    }
    // Power iteration approaches from below.
    const double bound = eig * 1.02;
    cache.emplace(key, bound);
    return bound;
}

Image twist_denoise(const CoeffField& x, const Measurements& meas, const SrmOperator& op,
                    double lambda, double step)
{
    check_shapes(x, meas, op);
    const Image grad = back_project(residual(x.values, x.spec, meas, op), x.spec, op);
    return soft_threshold(x.values + step * grad, step * lambda);
}

TwistResult twist_solve(const Measurements& meas, const SrmOperator& op, const WaveletSpec& spec,
                        const SolverConfig& cfg)
{
    cfg.validate();
    spec.validate(op.side());
    require(meas.side == op.side() && meas.values.rows() == op.measurements() &&
                meas.values.cols() == op.side(),
            "twist_solve: measurements do not match operator shape");

    TwistResult result;
    result.step = 1.0 / lipschitz_bound(op.side(), spec);
    const double step = result.step;

    const Image backprojection = op.adjoint(meas.values).real();
    Image x_prev = dwt2(backprojection, spec);
    if (cfg.lambda) {
        result.lambda = *cfg.lambda;
    } else {
        result.lambda = cfg.lambda_scale * idwt2_transpose(backprojection, spec).cwiseAbs().maxCoeff();
        if (!(result.lambda > 0.0)) result.lambda = cfg.lambda_scale;
    }
    const double lambda = result.lambda;
    const double tau = step * lambda;

    auto check_finite = [](double f, int it) {
        if (!std::isfinite(f))
            throw DivergenceError("TwIST objective became non-finite at iteration " +
                                  std::to_string(it));
    };

    ComplexField r_prev = residual(x_prev, spec, meas, op);
    double f_prev = value(x_prev, r_prev, lambda);
    check_finite(f_prev, 0);
    result.trace.push_back({0, f_prev, r_prev.norm()});

    // First step is plain IST.
    Image x = soft_threshold(x_prev + step * back_project(r_prev, spec, op), tau);
    ComplexField r = residual(x, spec, meas, op);
    double f = value(x, r, lambda);
    check_finite(f, 1);
    result.trace.push_back({1, f, r.norm()});

    bool converged = std::abs(f_prev - f) <= cfg.rel_tol * std::abs(f_prev);
    for (int it = 2; it <= cfg.max_iters && !converged; ++it) {
        const Image gamma_x = soft_threshold(x + step * back_project(r, spec, op), tau);
        Image candidate = (1.0 - cfg.alpha_step) * x_prev + (cfg.alpha_step - cfg.beta_step) * x +
                          cfg.beta_step * gamma_x;
        ComplexField r_cand = residual(candidate, spec, meas, op);
        double f_cand = value(candidate, r_cand, lambda);
        if (cfg.monotone && !(f_cand <= f)) {
            candidate = gamma_x;
            r_cand = residual(candidate, spec, meas, op);
            f_cand = value(candidate, r_cand, lambda);
        }
        check_finite(f_cand, it);

        converged = std::abs(f - f_cand) <= cfg.rel_tol * std::abs(f);
        x_prev = std::move(x);
        x = std::move(candidate);
        r = std::move(r_cand);
        f = f_cand;
        result.trace.push_back({it, f, r.norm()});
    }

    result.image = idwt2(x, spec).cwiseMax(0.0).cwiseMin(255.0);
    result.coeffs = CoeffField{std::move(x), spec};
    return result;
}

} // namespace srmcrypt
