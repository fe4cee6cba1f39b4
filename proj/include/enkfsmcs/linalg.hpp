#pragma once

#include <Eigen/Dense>

#include "enkfsmcs/errors.hpp"

namespace enkfsmcs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// (A + A^T)/2; every covariance is symmetrized at construction.
Matrix symmetrize(const Matrix& a);

bool is_symmetric(const Matrix& a, double rel_tol = 1e-10);

// Lower-triangular L with L L^T = A + jitter*I.
//
// Jitter ladder: none, then 1e-12*trace(A)/d escalating by 10x up to
// 1e-6*trace(A)/d; throws NotPositiveDefinite when the ladder is exhausted.
// Ensemble covariances with few particles are often rank-deficient, which is
// what the ladder absorbs. A zero-trace matrix falls back to absolute jitter.
Matrix cholesky_factor(const Matrix& a);

// X with A X = B via the Cholesky factor and two triangular solves;
// A^{-1} is never formed.
Matrix solve_spd(const Matrix& a, const Matrix& b);

// log sum_i exp(v_i), tolerant of -inf entries; returns -inf if all are.
double log_sum_exp(const Vector& v);

} // namespace enkfsmcs
