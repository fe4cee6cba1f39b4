#pragma once

#include <optional>

#include "enkfsmcs/gaussian.hpp"

namespace enkfsmcs {

// Prior over the parameter vector: uniform box or Gaussian.
class PriorSpec {
public:
    enum class Kind { uniform_box, gaussian };

    static PriorSpec uniform_box(Vector lower, Vector upper);
    static PriorSpec gaussian(Vector mean, Matrix cov);

    Kind kind() const { return kind_; }
    int dim() const;

    // -inf outside the box for the uniform kind.
    double log_density(const Vector& x) const;
    Vector sample(RngStream& rng) const;

    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    const GaussianDist& gaussian_dist() const { return *gauss_; }

private:
    PriorSpec() = default;

    Kind kind_ = Kind::uniform_box;
    Vector lower_, upper_;
    std::optional<GaussianDist> gauss_;
};

} // namespace enkfsmcs
