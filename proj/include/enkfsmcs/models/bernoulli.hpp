#pragma once

#include "enkfsmcs/forward_model.hpp"

namespace enkfsmcs {

// Closed-form solution of dv/dtau - v = -v^3 with v(0) = x:
//   v(tau) = x (x^2 + (1 - x^2) e^{-2 tau})^{-1/2}.
// Throws DomainError if the radicand is non-positive or the result is
// non-finite (cannot happen for tau >= 0, where the radicand is
// x^2 (1 - e^{-2 tau}) + e^{-2 tau} > 0).
double bernoulli_solution(double x, double tau);

// Scalar initial-condition estimation benchmark: observe v(t * dt) with
// iid N(0, sigma^2) noise, prior U[-1, 10]. Uses the closed form only;
// the equation is stiff near the unstable equilibrium at x = 0.
class BernoulliModel : public ForwardModel {
public:
    BernoulliModel(int steps = 50, double dt = 0.3, double sigma = 0.4);

    int param_dim() const override { return 1; }
    int obs_dim() const override { return 1; }
    int step_count() const override { return steps_; }
    double dt_obs() const override { return dt_; }
    const Matrix& obs_noise_cov(int) const override { return noise_cov_; }
    const GaussianDist& obs_noise_dist(int) const override { return noise_dist_; }
    const PriorSpec& prior() const override { return prior_; }
    std::string name() const override { return "bernoulli"; }

protected:
    std::unique_ptr<Trajectory> do_make_trajectory(const Vector& x) const override;

private:
    int steps_;
    double dt_;
    Matrix noise_cov_;
    GaussianDist noise_dist_;
    PriorSpec prior_;
};

} // namespace enkfsmcs
