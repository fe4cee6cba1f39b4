#include "enkfsmcs/models/bernoulli.hpp"

#include <cmath>

#include "enkfsmcs/errors.hpp"

namespace enkfsmcs {

double bernoulli_solution(double x, double tau) {
    const double x2 = x * x;
    const double radicand = x2 + (1.0 - x2) * std::exp(-2.0 * tau);
    if (!(radicand > 0.0))
        throw DomainError("bernoulli_solution: non-positive radicand");
    const double v = x / std::sqrt(radicand);
    if (!std::isfinite(v)) throw DomainError("bernoulli_solution: non-finite value");
    return v;
}

namespace {

class BernoulliTrajectory : public Trajectory {
public:
    BernoulliTrajectory(double x, double dt) : x_(x), dt_(dt) {}

    std::unique_ptr<Trajectory> clone() const override {
        return std::make_unique<BernoulliTrajectory>(*this);
    }

protected:
    void extend_one() override {
        const int t = static_cast<int>(obs_.size()) + 1;
        try {
            Vector g(1);
            g[0] = bernoulli_solution(x_, dt_ * static_cast<double>(t));
            obs_.push_back(std::move(g));
        } catch (const DomainError&) {
            dead_ = true;
        }
    }

private:
    double x_;
    double dt_;
};

} // namespace

BernoulliModel::BernoulliModel(int steps, double dt, double sigma)
    : steps_(steps),
      dt_(dt),
      noise_cov_(Matrix::Constant(1, 1, sigma * sigma)),
      noise_dist_(Vector::Zero(1), noise_cov_),
      prior_(PriorSpec::uniform_box(Vector::Constant(1, -1.0), Vector::Constant(1, 10.0))) {}

std::unique_ptr<Trajectory> BernoulliModel::do_make_trajectory(const Vector& x) const {
    return std::make_unique<BernoulliTrajectory>(x[0], dt_);
}

} // namespace enkfsmcs
