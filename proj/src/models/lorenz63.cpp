#include "enkfsmcs/models/lorenz63.hpp"

#include "enkfsmcs/ode.hpp"

namespace enkfsmcs {

namespace {

class LorenzTrajectory : public Trajectory {
public:
    LorenzTrajectory(const Vector& params, const Vector& init_state, int component,
                     double dt, int substeps)
        : alpha_(params[0]), beta_(params[1]), rho_(params[2]),
          component_(component), dt_(dt), substeps_(substeps) {
        state_ = {init_state[0], init_state[1], init_state[2]};
        if (!std::isfinite(alpha_) || !std::isfinite(beta_) || !std::isfinite(rho_))
            dead_ = true;
    }

    std::unique_ptr<Trajectory> clone() const override {
        return std::make_unique<LorenzTrajectory>(*this);
    }

protected:
    void extend_one() override {
        auto rhs = [this](const double* s, double* ds) {
            ds[0] = alpha_ * (s[1] - s[0]);
            ds[1] = s[0] * (rho_ - s[2]) - s[1];
            ds[2] = s[0] * s[1] - beta_ * s[2];
        };
        try {
            std::array<double, 15> work{};
            rk4_advance(state_.data(), 3, rhs, dt_, substeps_, work.data());
        } catch (const NonFiniteState&) {
            dead_ = true;
            return;
        }
        Vector g(1);
        g[0] = state_[component_];
        obs_.push_back(std::move(g));
    }

private:
    double alpha_, beta_, rho_;
    int component_;
    double dt_;
    int substeps_;
    std::array<double, 3> state_{};
};

} // namespace

PriorSpec Lorenz63Model::default_prior() {
    Vector mean(3);
    mean << 6.0, 0.0, 24.0;
    return PriorSpec::gaussian(mean, Matrix::Identity(3, 3));
}

Lorenz63Model::Lorenz63Model(Vector initial_state, int observed_component, int steps,
                             double dt, int substeps, double noise_std, PriorSpec prior)
    : init_state_(std::move(initial_state)),
      component_(observed_component),
      steps_(steps),
      dt_(dt),
      substeps_(substeps),
      noise_cov_(Matrix::Constant(1, 1, noise_std * noise_std)),
      noise_dist_(Vector::Zero(1), noise_cov_),
      prior_(std::move(prior)) {
    if (init_state_.size() != 3)
        throw std::invalid_argument("Lorenz63Model: initial state must have 3 components");
    if (component_ < 0 || component_ > 2)
        throw std::invalid_argument("Lorenz63Model: observed component out of range");
}

std::unique_ptr<Trajectory> Lorenz63Model::do_make_trajectory(const Vector& x) const {
    return std::make_unique<LorenzTrajectory>(x, init_state_, component_, dt_, substeps_);
}

} // namespace enkfsmcs
