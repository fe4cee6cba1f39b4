#include "enkfsmcs/gaussian.hpp"

#include <cmath>

namespace enkfsmcs {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

GaussianDist::GaussianDist(Vector mean, Matrix cov)
    : mean_(std::move(mean)), cov_(symmetrize(cov)) {
    if (cov_.rows() != mean_.size())
        throw std::invalid_argument("GaussianDist: mean/cov dimension mismatch");
    chol_ = cholesky_factor(cov_);
    log_norm_ = -0.5 * static_cast<double>(dim()) * kLog2Pi;
    for (int i = 0; i < dim(); ++i) log_norm_ -= std::log(chol_(i, i));
}

Vector GaussianDist::sample(RngStream& rng) const {
    Vector z(dim());
    for (int i = 0; i < dim(); ++i) z[i] = rng.normal();
    return mean_ + chol_.triangularView<Eigen::Lower>() * z;
}

double GaussianDist::logpdf(const Vector& x) const {
    if (x.size() != mean_.size())
        throw std::invalid_argument("GaussianDist::logpdf: dimension mismatch");
    const Vector y = chol_.triangularView<Eigen::Lower>().solve(x - mean_);
    return log_norm_ - 0.5 * y.squaredNorm();
}

} // namespace enkfsmcs
