#pragma once

#include "enkfsmcs/linalg.hpp"
#include "enkfsmcs/rng.hpp"

namespace enkfsmcs {

// Multivariate normal with the Cholesky factor computed at construction.
// Immutable afterwards, so instances are safe to share across threads.
class GaussianDist {
public:
    GaussianDist(Vector mean, Matrix cov);

    int dim() const { return static_cast<int>(mean_.size()); }
    const Vector& mean() const { return mean_; }
    const Matrix& cov() const { return cov_; }
    const Matrix& chol() const { return chol_; }

    // mean + L z with z iid standard normal from the stream.
    Vector sample(RngStream& rng) const;

    // -1/2 (x-mu)^T S^{-1} (x-mu) - 1/2 log det(2 pi S), via triangular solve.
    double logpdf(const Vector& x) const;

private:
    Vector mean_;
    Matrix cov_;
    Matrix chol_;
    double log_norm_; // -sum log L_ii - d/2 log(2 pi)
};

} // namespace enkfsmcs
