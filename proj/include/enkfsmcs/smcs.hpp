#pragma once

#include <functional>

#include "enkfsmcs/enkf.hpp"

namespace enkfsmcs {

enum class Algorithm { enkf_only, enkf_smcs, enkf_smcs_wr };

struct SmcsConfig {
    int particle_count = 1000;
    double delta = 1e-4;              // scale of the Sigma^q regularization in Sigma^K
    double ess_min_fraction = 0.5;    // refine when ESS < fraction * M
    int delta_T_max = 10;             // refine when t - t0 exceeds this
    double ess_resample_fraction = 0.5;
    Algorithm algorithm = Algorithm::enkf_smcs;
    std::uint64_t seed = 0;
};

// Per-step forward kernel K_t and Gaussian backward kernel L_{t-1}.
//
// Forward:  K_t(. | x) = N(. | x + Qx (y_t - G_t(x)), Sigma^K),
//           Sigma^K = Qx R Qx^T + delta^2 Sigma^q_{t-1}.
// Backward: built from the Gaussian ensemble fit q_prev = N(xi, Sigma^q)
//           and the mean-shifted kernel K^(. | x) = N(. | x + Qx (y_t - ybar), Sigma^K):
//           L(. | x_t) = N(. | TL(x_t), Sigma^L) with
//           TL(x_t) = (I - Sigma^K (Sigma^K + Sigma^q)^{-1}) (x_t - Qx (y_t - ybar))
//                     + (I - Sigma^q (Sigma^q + Sigma^K)^{-1}) xi,
//           Sigma^L = Sigma^q - Sigma^q (Sigma^q + Sigma^K)^{-1} Sigma^q.
struct KernelPair {
    Matrix Qx;
    Vector y_t;
    Vector ybar;          // weighted ensemble mean of G_t(x_{t-1})
    Vector khat_shift;    // Qx (y_t - ybar)
    GaussianDist q_prev;  // N(xi_{t-1}, Sigma^q_{t-1})
    GaussianDist k_noise; // N(0, Sigma^K)
    GaussianDist l_noise; // N(0, Sigma^L)
    Matrix tl_mat;
    Vector tl_off;

    const Vector& xi_prev() const { return q_prev.mean(); }
    const Matrix& sigma_q_prev() const { return q_prev.cov(); }
    const Matrix& sigma_k() const { return k_noise.cov(); }
    const Matrix& sigma_l() const { return l_noise.cov(); }

    Vector forward_mean(const Vector& x_prev, const Vector& g_prev) const {
        return x_prev + Qx * (y_t - g_prev);
    }
    Vector backward_mean(const Vector& x_new) const {
        return tl_mat * (x_new - khat_shift) + tl_off;
    }
    double forward_log_density(const Vector& x_new, const Vector& x_prev,
                               const Vector& g_prev) const {
        return k_noise.logpdf(x_new - forward_mean(x_prev, g_prev));
    }
    double backward_log_density(const Vector& x_prev, const Vector& x_new) const {
        return l_noise.logpdf(x_prev - backward_mean(x_new));
    }
};

// Builds the kernel pair for one step. xi, Sigma^q and ybar come from the
// gain bundle's weighted moments (parameter block and observation block of
// mu_tilde / C_tilde), so gain and kernel always see the same ensemble fit.
KernelPair build_forward_kernel(const GainBundle& gain, const Vector& y_t, const Matrix& r,
                                double delta);

// Cached transition record between two exact-weight steps.
struct HistoryStep {
    int t = 0;
    KernelPair kernel;
    Matrix x_before;    // x_{t-1}
    Matrix x_after;     // x_t
    Matrix kernel_mean; // T_t(x_{t-1}) per particle
    Vector log_k;       // log K_t(x_t | x_{t-1})
    Vector log_l;       // log L_{t-1}(x_{t-1} | x_t)
};

// Everything needed to telescope exact weights from the last exact step t0.
struct WeightHistory {
    int t0 = 0;
    Vector log_w_t0;    // normalized log-weights at t0
    Vector log_post_t0; // log pi_{t0}(x_{t0}^m)
    std::vector<HistoryStep> steps;
};

struct ParticleEnsemble {
    Matrix xs;          // M x n_x
    Vector log_weights; // normalized: logsumexp == 0
    std::vector<char> frozen;
    std::vector<std::uint32_t> stream_ids;
    WeightHistory history;

    int count() const { return static_cast<int>(xs.rows()); }
    int param_dim() const { return static_cast<int>(xs.cols()); }
};

// Shifts log-weights so logsumexp == 0; returns the shift. Throws
// DegenerateEnsemble when every weight is -inf.
double normalize_log_weights(Vector& log_weights);

// 1 / sum_m (w^m)^2 from normalized log-weights, evaluated in log space.
double ess(const Vector& normalized_log_weights);

// Systematic resampling: M stratified positions from one uniform draw.
// Offspring counts are floor(M W_m) or ceil(M W_m) by construction; that
// bound is asserted on every call.
std::vector<int> systematic_resample_indices(const Vector& normalized_log_weights,
                                             RngStream& rng);

// Applies systematic resampling to the ensemble: weights reset to uniform,
// frozen flags cleared, history truncated at the new exact-weight state.
void resample_systematic(ParticleEnsemble& ens, RngStream& rng);

struct ForwardSample {
    Matrix x_new;       // M x n_x draws from K_t
    Matrix kernel_mean; // T_t(x_{t-1}^m)
    Vector log_k;       // log K_t(x_new | x_prev)
};

// Draws x_t^m = T_t(x_{t-1}^m) + eps, eps ~ N(0, Sigma^K), reusing the
// G_t(x_{t-1}^m) values already computed for the gain (zs); no model calls.
ForwardSample sample_forward(const KernelPair& kernel, const Matrix& xs, const Matrix& zs,
                             const std::vector<std::uint32_t>& stream_ids,
                             std::uint64_t seed, int t);

// alpha_t = pi_t(x_t) L(x_{t-1}|x_t) / (pi_{t-1}(x_{t-1}) K(x_t|x_{t-1})) in
// log space; log_post_* are cumulative log-posteriors at the two locations.
// Returns -inf whenever either log-posterior is non-finite.
double incremental_log_weight(double log_post_new, double log_post_prev, double log_l,
                              double log_k);
double incremental_log_weight(const KernelPair& kernel, const Vector& x_prev,
                              const Vector& x_new, const Vector& g_prev,
                              double log_post_new, double log_post_prev);

// Approximate increment: q(x_t) pi(y_t|x_t) L / (q(x_{t-1}) K) in log space,
// using only the current-step likelihood.
double approx_incremental_log_weight(double log_q_new, double log_q_prev, double loglik_y,
                                     double log_l, double log_k);
double approx_incremental_log_weight(const KernelPair& kernel, const Vector& x_prev,
                                     const Vector& x_new, const Vector& g_prev,
                                     double loglik_y);

// Telescoped exact weight from the last exact step:
//   log w_t0 + log pi_t(x_t) - log pi_t0(x_t0) + sum_i (log L_i - log K_{i+1}).
double refined_log_weight(const WeightHistory& history, int particle, double log_post_t);

// Step-level trace for tests and invariant monitors; weights and xs are the
// post-update, pre-resample state the RunRecord statistics come from.
struct StepTrace {
    int t = 0;
    const KernelPair* kernel = nullptr;
    const Vector* log_weights = nullptr;
    const Matrix* xs = nullptr;
    double ess_value = 0.0;
    bool refined = false;
    bool resampled = false;
};
using StepObserver = std::function<void(const StepTrace&)>;

// Algorithm with exact weights at every step.
std::vector<RunRecord> run_enkf_smcs(const ForwardModel& model,
                                     const std::vector<ObservationRecord>& data,
                                     const SmcsConfig& config, const Vector& truth,
                                     const StepObserver& observer = {});

// Weight-refinement variant: cheap approximate weights per step, exact
// weights when ESS < ESS_min, t - t0 > DeltaT_max, or t == T; resample only
// when the post-refinement ESS drops below the resample threshold.
std::vector<RunRecord> run_enkf_smcs_wr(const ForwardModel& model,
                                        const std::vector<ObservationRecord>& data,
                                        const SmcsConfig& config, const Vector& truth,
                                        const StepObserver& observer = {});

} // namespace enkfsmcs
