#include "enkfsmcs/models/linear_gaussian.hpp"

namespace enkfsmcs {

namespace {

class LinearTrajectory : public Trajectory {
public:
    LinearTrajectory(Vector x, const std::vector<Matrix>* a) : x_(std::move(x)), a_(a) {}

    std::unique_ptr<Trajectory> clone() const override {
        return std::make_unique<LinearTrajectory>(*this);
    }

protected:
    void extend_one() override {
        const std::size_t t = obs_.size();
        if (t >= a_->size()) {
            dead_ = true;
            return;
        }
        Vector g = (*a_)[t] * x_;
        if (!g.allFinite()) {
            dead_ = true;
            return;
        }
        obs_.push_back(std::move(g));
    }

private:
    Vector x_;
    const std::vector<Matrix>* a_;
};

} // namespace

LinearGaussianModel::LinearGaussianModel(std::vector<Matrix> a_matrices, Matrix r,
                                         PriorSpec prior, double dt)
    : a_(std::move(a_matrices)),
      r_(std::move(r)),
      noise_dist_(Vector::Zero(r_.rows()), r_),
      prior_(std::move(prior)),
      n_x_(static_cast<int>(a_.front().cols())),
      n_y_(static_cast<int>(a_.front().rows())),
      dt_(dt) {
    for (const auto& a : a_) {
        if (a.cols() != n_x_ || a.rows() != n_y_)
            throw std::invalid_argument("LinearGaussianModel: inconsistent A_t shapes");
    }
}

LinearGaussianModel LinearGaussianModel::random(int n_x, int n_y, int steps, double r_scale,
                                                std::uint64_t seed) {
    auto rng = make_stream(seed, StreamPurpose::data_noise, 0, 0xA);
    std::vector<Matrix> a;
    a.reserve(static_cast<std::size_t>(steps));
    for (int t = 0; t < steps; ++t) {
        Matrix m(n_y, n_x);
        for (int i = 0; i < n_y; ++i)
            for (int j = 0; j < n_x; ++j) m(i, j) = 2.0 * rng.uniform01() - 1.0;
        a.push_back(std::move(m));
    }
    PriorSpec prior = PriorSpec::gaussian(Vector::Zero(n_x), Matrix::Identity(n_x, n_x));
    return LinearGaussianModel(std::move(a), r_scale * Matrix::Identity(n_y, n_y),
                               std::move(prior));
}

std::unique_ptr<Trajectory> LinearGaussianModel::do_make_trajectory(const Vector& x) const {
    return std::make_unique<LinearTrajectory>(x, &a_);
}

} // namespace enkfsmcs
