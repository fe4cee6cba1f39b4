#pragma once

#include <cstdint>
#include <vector>

#include "enkfsmcs/forward_model.hpp"
#include "enkfsmcs/moments.hpp"
#include "enkfsmcs/run_record.hpp"

namespace enkfsmcs {

// Ensemble over the artificial dynamics state u = [x, z] with z = G_t(x).
struct AugmentedEnsemble {
    Matrix xs; // M x n_x parameter particles
    Matrix zs; // M x n_y predicted observations
    std::vector<std::uint32_t> stream_ids; // per-particle RNG stream identity

    int count() const { return static_cast<int>(xs.rows()); }
    int param_dim() const { return static_cast<int>(xs.cols()); }
    int obs_dim() const { return static_cast<int>(zs.cols()); }
    Matrix stacked() const; // M x (n_x + n_y)
};

// Kalman gain and the prior moments it was computed from.
struct GainBundle {
    Matrix Q;        // (n_x + n_y) x n_y
    Matrix Qx;       // top n_x x n_y block of Q
    Vector mu_tilde; // prior mean of u
    Matrix C_tilde;  // prior covariance of u
    int n_x = 0;
    int n_y = 0;
};

// Weighted moments of the stacked u-vectors. With uniform weights this is
// the 1/M mean and 1/(M-1) covariance; weighted ensembles use the standard
// reliability-weights correction.
MomentEstimate prior_moments(const AugmentedEnsemble& ens, const Vector& weights);

// Q = C~ H^T (H C~ H^T + R)^{-1} with H = [0, I]: H C~ H^T is the lower-right
// n_y x n_y block of C~ and C~ H^T its right column block. Solved via
// solve_spd; the innovation matrix is never inverted explicitly.
GainBundle kalman_gain(const Vector& mu_tilde, const Matrix& c_tilde, const Matrix& r,
                       int n_x);

// Perturbed-observation update, one fresh eta per particle stream:
//   u^m += Q (y - (H u^m - eta^m)) = Q (y - z^m + eta^m).
void enkf_update(AugmentedEnsemble& ens, const GainBundle& gain, const Vector& y,
                 const GaussianDist& obs_noise, std::uint64_t seed, int t);

// Full EnKF parameter-estimation run: per step propagate z = G_t(x),
// estimate moments with uniform weights, compute the gain, update.
// Non-finite predictions are replaced by the ensemble median and the
// particle is flagged for that step.
std::vector<RunRecord> enkf_run(const ForwardModel& model,
                                const std::vector<ObservationRecord>& data,
                                int particle_count, std::uint64_t seed,
                                const Vector& truth);

} // namespace enkfsmcs
