#pragma once

#include "enkfsmcs/forward_model.hpp"

namespace enkfsmcs {

// G_t(x) = A_t x with Gaussian prior and fixed R. The conjugate Kalman
// recursion is available in closed form, which makes this the exactness
// oracle for the samplers.
class LinearGaussianModel : public ForwardModel {
public:
    LinearGaussianModel(std::vector<Matrix> a_matrices, Matrix r, PriorSpec prior,
                        double dt = 1.0);

    // Random A_t entries in [-1, 1], standard-normal prior, R = r_scale * I.
    static LinearGaussianModel random(int n_x, int n_y, int steps, double r_scale,
                                      std::uint64_t seed);

    int param_dim() const override { return n_x_; }
    int obs_dim() const override { return n_y_; }
    int step_count() const override { return static_cast<int>(a_.size()); }
    double dt_obs() const override { return dt_; }
    const Matrix& obs_noise_cov(int) const override { return r_; }
    const GaussianDist& obs_noise_dist(int) const override { return noise_dist_; }
    const PriorSpec& prior() const override { return prior_; }
    std::string name() const override { return "linear_gaussian"; }

    const Matrix& design_matrix(int t) const { return a_.at(static_cast<std::size_t>(t - 1)); }

protected:
    std::unique_ptr<Trajectory> do_make_trajectory(const Vector& x) const override;

private:
    std::vector<Matrix> a_;
    Matrix r_;
    GaussianDist noise_dist_;
    PriorSpec prior_;
    int n_x_, n_y_;
    double dt_;
};

} // namespace enkfsmcs
