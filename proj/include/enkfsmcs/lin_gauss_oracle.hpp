#pragma once

#include "enkfsmcs/gaussian.hpp"

namespace enkfsmcs::lingauss {

// For a linear forward kernel K(. | x) = N(. | F x + b, Sigma^K) and a
// Gaussian marginal q_{prev}, the pushed-forward marginal and the optimal
// backward kernel are available in closed form. The general sampler cannot
// use these (its kernel mean is nonlinear in x); they exist to oracle-test
// the Gaussian backward kernel and the weight identities.

// q_t(x_t) = integral K(x_t | x) q_prev(x) dx = N(F m + b, F P F^T + Sigma^K).
GaussianDist push_through_linear_kernel(const GaussianDist& q_prev, const Matrix& f,
                                        const Vector& b, const Matrix& sigma_k);

// Gaussian conditional x_{t-1} | x_t under the joint q_prev(x_{t-1}) K(x_t | x_{t-1}):
// exactly q_prev(x_{t-1}) K(x_t | x_{t-1}) / q_t(x_t).
struct ConditionalGaussian {
    Matrix gain;   // P F^T (F P F^T + Sigma^K)^{-1}
    Vector offset; // m - gain (F m + b)
    Matrix cov;    // P - gain F P

    Vector mean(const Vector& x_t) const { return offset + gain * x_t; }
};

ConditionalGaussian optimal_backward_kernel(const GaussianDist& q_prev, const Matrix& f,
                                            const Vector& b, const Matrix& sigma_k);

} // namespace enkfsmcs::lingauss
