#pragma once

#include <vector>

#include "enkfsmcs/linalg.hpp"

namespace enkfsmcs {

struct MomentEstimate {
    Vector mean;
    Matrix cov;
    double ess = 0.0;
};

// Weighted mean and covariance of the rows of `rows` (one sample per row).
// Weights must be normalized and non-negative. The covariance uses the
// reliability-weights correction 1/(1 - sum w^2), which reduces to the
// 1/(M-1) unbiased formula under uniform weights. Throws DegenerateEnsemble
// when fewer than two rows or ESS < 2.
MomentEstimate weighted_moments(const Matrix& rows, const Vector& weights);

struct MeanStd {
    Vector mean;
    Vector stddev;
};

// Diagnostics variant: never throws, clamps the reliability denominator so
// near-degenerate weight vectors still produce finite summaries.
MeanStd weighted_mean_std(const Matrix& rows, const Vector& weights);

// Replaces rows flagged in `bad` by the per-column median of the good rows.
void median_fill_rows(Matrix& rows, const std::vector<char>& bad);

} // namespace enkfsmcs
