#include "enkfsmcs/lin_gauss_oracle.hpp"

namespace enkfsmcs::lingauss {

GaussianDist push_through_linear_kernel(const GaussianDist& q_prev, const Matrix& f,
                                        const Vector& b, const Matrix& sigma_k) {
    const Vector mean = f * q_prev.mean() + b;
    const Matrix cov = symmetrize(f * q_prev.cov() * f.transpose() + sigma_k);
    return GaussianDist(mean, cov);
}

ConditionalGaussian optimal_backward_kernel(const GaussianDist& q_prev, const Matrix& f,
                                            const Vector& b, const Matrix& sigma_k) {
    const Matrix& p = q_prev.cov();
    const Matrix s = symmetrize(f * p * f.transpose() + sigma_k);
    ConditionalGaussian cond;
    cond.gain = solve_spd(s, f * p).transpose(); // P F^T S^{-1}
    cond.offset = q_prev.mean() - cond.gain * (f * q_prev.mean() + b);
    cond.cov = symmetrize(p - cond.gain * f * p);
    return cond;
}

} // namespace enkfsmcs::lingauss
