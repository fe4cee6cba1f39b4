#pragma once

#include <array>

#include "enkfsmcs/forward_model.hpp"

namespace enkfsmcs {

// dx = alpha (y - x), dy = x (rho - z) - y, dz = x y - beta z.
inline std::array<double, 3> lorenz63_rhs(const std::array<double, 3>& state,
                                          double alpha, double rho, double beta) {
    return {alpha * (state[1] - state[0]),
            state[0] * (rho - state[2]) - state[1],
            state[0] * state[1] - beta * state[2]};
}

// Estimates (alpha, beta, rho) from noisy observations of one state
// component at tau = t * dt, integrating from a fixed initial state with
// fixed-step RK4. The parameter vector is ordered (alpha, beta, rho).
class Lorenz63Model : public ForwardModel {
public:
    Lorenz63Model(Vector initial_state, int observed_component /*0=x, 1=y, 2=z*/,
                  int steps = 100, double dt = 0.1, int substeps = 20,
                  double noise_std = 3.0,
                  PriorSpec prior = default_prior());

    static PriorSpec default_prior(); // N([6, 0, 24], I)

    int param_dim() const override { return 3; }
    int obs_dim() const override { return 1; }
    int step_count() const override { return steps_; }
    double dt_obs() const override { return dt_; }
    const Matrix& obs_noise_cov(int) const override { return noise_cov_; }
    const GaussianDist& obs_noise_dist(int) const override { return noise_dist_; }
    const PriorSpec& prior() const override { return prior_; }
    std::string name() const override { return "lorenz63"; }

    int observed_component() const { return component_; }
    const Vector& initial_state() const { return init_state_; }
    int substeps() const { return substeps_; }

protected:
    std::unique_ptr<Trajectory> do_make_trajectory(const Vector& x) const override;

private:
    Vector init_state_;
    int component_;
    int steps_;
    double dt_;
    int substeps_;
    Matrix noise_cov_;
    GaussianDist noise_dist_;
    PriorSpec prior_;
};

} // namespace enkfsmcs
