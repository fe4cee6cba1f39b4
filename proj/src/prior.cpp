#include "enkfsmcs/prior.hpp"

#include <cmath>
#include <limits>

namespace enkfsmcs {

PriorSpec PriorSpec::uniform_box(Vector lower, Vector upper) {
    if (lower.size() != upper.size())
        throw std::invalid_argument("PriorSpec: bound dimensions differ");
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i]))
            throw std::invalid_argument("PriorSpec: bounds must be finite with lower < upper");
    }
    PriorSpec p;
    p.kind_ = Kind::uniform_box;
    p.lower_ = std::move(lower);
    p.upper_ = std::move(upper);
    return p;
}

PriorSpec PriorSpec::gaussian(Vector mean, Matrix cov) {
    PriorSpec p;
    p.kind_ = Kind::gaussian;
    p.gauss_.emplace(std::move(mean), std::move(cov));
    return p;
}

int PriorSpec::dim() const {
    return kind_ == Kind::uniform_box ? static_cast<int>(lower_.size()) : gauss_->dim();
}

double PriorSpec::log_density(const Vector& x) const {
    if (kind_ == Kind::gaussian) return gauss_->logpdf(x);
    double logp = 0.0;
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
        if (x[i] < lower_[i] || x[i] > upper_[i])
            return -std::numeric_limits<double>::infinity();
        logp -= std::log(upper_[i] - lower_[i]);
    }
    return logp;
}

Vector PriorSpec::sample(RngStream& rng) const {
    if (kind_ == Kind::gaussian) return gauss_->sample(rng);
    Vector x(lower_.size());
    for (Eigen::Index i = 0; i < lower_.size(); ++i)
        x[i] = lower_[i] + (upper_[i] - lower_[i]) * rng.uniform01();
    return x;
}

} // namespace enkfsmcs
