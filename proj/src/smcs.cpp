#include "enkfsmcs/smcs.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "enkfsmcs/errors.hpp"
#include "enkfsmcs/parallel.hpp"

namespace enkfsmcs {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

KernelPair build_forward_kernel(const GainBundle& gain, const Vector& y_t, const Matrix& r,
                                double delta) {
    const int n_x = gain.n_x;
    const int n_y = gain.n_y;

    const Vector xi = gain.mu_tilde.head(n_x);
    const Matrix sigma_q = symmetrize(gain.C_tilde.topLeftCorner(n_x, n_x));
    const Vector ybar = gain.mu_tilde.tail(n_y);

    const Matrix sigma_k =
        symmetrize(gain.Qx * r * gain.Qx.transpose() + (delta * delta) * sigma_q);

    // (Sigma^q + Sigma^K)^{-1} applications via Cholesky solves.
    const Matrix sum_cov = symmetrize(sigma_q + sigma_k);
    const Matrix inv_sum_times_k = solve_spd(sum_cov, sigma_k);   // S^{-1} Sigma^K
    const Matrix inv_sum_times_q = solve_spd(sum_cov, sigma_q);   // S^{-1} Sigma^q

    const Matrix identity = Matrix::Identity(n_x, n_x);
    Matrix tl_mat = identity - inv_sum_times_k.transpose(); // I - Sigma^K S^{-1}
    Vector tl_off = (identity - inv_sum_times_q.transpose()) * xi;
    Matrix sigma_l = symmetrize(sigma_q - sigma_q * inv_sum_times_q);

    return KernelPair{
        gain.Qx,
        y_t,
        ybar,
        gain.Qx * (y_t - ybar),
        GaussianDist(xi, sigma_q),
        GaussianDist(Vector::Zero(n_x), sigma_k),
        GaussianDist(Vector::Zero(n_x), sigma_l),
        std::move(tl_mat),
        std::move(tl_off),
    };
}

double normalize_log_weights(Vector& log_weights) {
    const double log_z = log_sum_exp(log_weights);
    if (!std::isfinite(log_z))
        throw DegenerateEnsemble("normalize_log_weights: all weights are -inf");
    log_weights.array() -= log_z;
    return log_z;
}

double ess(const Vector& normalized_log_weights) {
    return std::exp(-log_sum_exp(2.0 * normalized_log_weights));
}

std::vector<int> systematic_resample_indices(const Vector& normalized_log_weights,
                                             RngStream& rng) {
    const auto m_count = normalized_log_weights.size();
    const double u = rng.uniform01();
    std::vector<int> indices(static_cast<std::size_t>(m_count));

    double cumulative = 0.0;
    Eigen::Index ancestor = 0;
    double w_ancestor = std::exp(normalized_log_weights[0]);
    cumulative = w_ancestor;
    std::vector<int> offspring(static_cast<std::size_t>(m_count), 0);
    for (Eigen::Index m = 0; m < m_count; ++m) {
        const double position = (static_cast<double>(m) + u) / static_cast<double>(m_count);
        while (position > cumulative && ancestor + 1 < m_count) {
            ++ancestor;
            cumulative += std::exp(normalized_log_weights[ancestor]);
        }
        indices[static_cast<std::size_t>(m)] = static_cast<int>(ancestor);
        ++offspring[static_cast<std::size_t>(ancestor)];
    }

    // Offspring-count law of systematic resampling.
    for (Eigen::Index a = 0; a < m_count; ++a) {
        const double expected =
            static_cast<double>(m_count) * std::exp(normalized_log_weights[a]);
        const int n = offspring[static_cast<std::size_t>(a)];
        if (n < static_cast<int>(std::floor(expected)) ||
            n > static_cast<int>(std::ceil(expected)))
            throw std::logic_error("systematic_resample_indices: offspring count bound violated");
    }
    return indices;
}

void resample_systematic(ParticleEnsemble& ens, RngStream& rng) {
    const auto indices = systematic_resample_indices(ens.log_weights, rng);
    const int m_count = ens.count();
    Matrix xs_new(m_count, ens.param_dim());
    for (int m = 0; m < m_count; ++m) xs_new.row(m) = ens.xs.row(indices[static_cast<std::size_t>(m)]);
    ens.xs = std::move(xs_new);
    ens.log_weights.setConstant(-std::log(static_cast<double>(m_count)));
    std::fill(ens.frozen.begin(), ens.frozen.end(), static_cast<char>(0));

    // Resampling only happens at exact-weight states; the telescoping
    // history restarts here.
    ens.history.steps.clear();
    ens.history.log_w_t0 = ens.log_weights;
    if (ens.history.log_post_t0.size() == ens.log_weights.size()) {
        Vector lp(m_count);
        for (int m = 0; m < m_count; ++m)
            lp[m] = ens.history.log_post_t0[indices[static_cast<std::size_t>(m)]];
        ens.history.log_post_t0 = std::move(lp);
    }
}

ForwardSample sample_forward(const KernelPair& kernel, const Matrix& xs, const Matrix& zs,
                             const std::vector<std::uint32_t>& stream_ids,
                             std::uint64_t seed, int t) {
    const auto m_count = xs.rows();
    ForwardSample out;
    out.x_new.resize(m_count, xs.cols());
    out.kernel_mean.resize(m_count, xs.cols());
    out.log_k.resize(m_count);
    parallel_for(m_count, [&](std::ptrdiff_t m) {
        const Vector mean =
            kernel.forward_mean(xs.row(m).transpose(), zs.row(m).transpose());
        auto rng = make_stream(seed, StreamPurpose::kernel_noise,
                               static_cast<std::uint64_t>(t),
                               stream_ids[static_cast<std::size_t>(m)]);
        const Vector x = mean + kernel.k_noise.sample(rng);
        out.x_new.row(m) = x.transpose();
        out.kernel_mean.row(m) = mean.transpose();
        // Evaluated on the recomputed difference so that replaying the cached
        // path through the stored kernel reproduces this value bit for bit.
        out.log_k[m] = kernel.k_noise.logpdf(x - mean);
    });
    return out;
}

double incremental_log_weight(double log_post_new, double log_post_prev, double log_l,
                              double log_k) {
    if (!std::isfinite(log_post_new) || !std::isfinite(log_post_prev)) return kNegInf;
    return (log_post_new - log_post_prev) + (log_l - log_k);
}

double incremental_log_weight(const KernelPair& kernel, const Vector& x_prev,
                              const Vector& x_new, const Vector& g_prev,
                              double log_post_new, double log_post_prev) {
    return incremental_log_weight(log_post_new, log_post_prev,
                                  kernel.backward_log_density(x_prev, x_new),
                                  kernel.forward_log_density(x_new, x_prev, g_prev));
}

double approx_incremental_log_weight(double log_q_new, double log_q_prev, double loglik_y,
                                     double log_l, double log_k) {
    if (!std::isfinite(loglik_y)) return kNegInf;
    return (log_q_new - log_q_prev) + loglik_y + (log_l - log_k);
}

double approx_incremental_log_weight(const KernelPair& kernel, const Vector& x_prev,
                                     const Vector& x_new, const Vector& g_prev,
                                     double loglik_y) {
    return approx_incremental_log_weight(kernel.q_prev.logpdf(x_new),
                                         kernel.q_prev.logpdf(x_prev), loglik_y,
                                         kernel.backward_log_density(x_prev, x_new),
                                         kernel.forward_log_density(x_new, x_prev, g_prev));
}

double refined_log_weight(const WeightHistory& history, int particle, double log_post_t) {
    const double log_w_t0 = history.log_w_t0[particle];
    const double log_post_t0 = history.log_post_t0[particle];
    if (!std::isfinite(log_w_t0) || !std::isfinite(log_post_t) ||
        !std::isfinite(log_post_t0))
        return kNegInf;
    double kernel_ratio = 0.0;
    for (const auto& step : history.steps)
        kernel_ratio += step.log_l[particle] - step.log_k[particle];
    return log_w_t0 + (log_post_t - log_post_t0) + kernel_ratio;
}

namespace {

// log pi_t(x) = log pi_0(x) + sum_{i<=t} log N(y_i; G_i(x), R_i), served from
// the particle's trajectory cache; -inf outside the prior support or once
// the trajectory has diverged.
double log_posterior_at(const ForwardModel& model, const std::vector<ObservationRecord>& data,
                        Trajectory& traj, const Vector& x, int t) {
    double lp = model.prior().log_density(x);
    if (!std::isfinite(lp)) return kNegInf;
    for (int i = 1; i <= t; ++i) {
        const Vector* g = traj.observe(i);
        if (g == nullptr) return kNegInf;
        lp += model.obs_noise_dist(i).logpdf(data[static_cast<std::size_t>(i - 1)].y - *g);
    }
    return lp;
}

// Duplicated ancestors need independent caches, hence clones.
void gather_trajectories(std::vector<std::unique_ptr<Trajectory>>& traj,
                         const std::vector<int>& indices) {
    std::vector<std::unique_ptr<Trajectory>> next(traj.size());
    for (std::size_t m = 0; m < indices.size(); ++m)
        next[m] = traj[static_cast<std::size_t>(indices[m])]->clone();
    traj = std::move(next);
}

Matrix gather_rows(const Matrix& rows, const std::vector<int>& indices) {
    Matrix out(rows.rows(), rows.cols());
    for (Eigen::Index m = 0; m < rows.rows(); ++m)
        out.row(m) = rows.row(indices[static_cast<std::size_t>(m)]);
    return out;
}

Vector gather(const Vector& v, const std::vector<int>& indices) {
    Vector out(v.size());
    for (Eigen::Index m = 0; m < v.size(); ++m) out[m] = v[indices[static_cast<std::size_t>(m)]];
    return out;
}

std::vector<RunRecord> run_smcs_core(const ForwardModel& model,
                                     const std::vector<ObservationRecord>& data,
                                     const SmcsConfig& cfg, const Vector& truth,
                                     const StepObserver& observer,
                                     bool weight_refinement) {
    const int m_count = cfg.particle_count;
    const int n_x = model.param_dim();
    const int n_y = model.obs_dim();
    const int steps = model.step_count();
    if (static_cast<int>(data.size()) < steps)
        throw std::invalid_argument("run_smcs: data does not cover all steps");
    if (m_count < 2) throw DegenerateEnsemble("run_smcs: need at least 2 particles", 1);
    const std::uint64_t seed = cfg.seed;

    model.reset_eval_count();

    Matrix xs(m_count, n_x);
    std::vector<std::uint32_t> ids(static_cast<std::size_t>(m_count));
    std::iota(ids.begin(), ids.end(), 0u);
    std::vector<char> frozen(static_cast<std::size_t>(m_count), 0);
    std::vector<std::unique_ptr<Trajectory>> traj(static_cast<std::size_t>(m_count));

    parallel_for(m_count, [&](std::ptrdiff_t m) {
        auto rng = make_stream(seed, StreamPurpose::prior_draw, 0,
                               ids[static_cast<std::size_t>(m)]);
        xs.row(m) = model.prior().sample(rng).transpose();
        traj[static_cast<std::size_t>(m)] = model.make_trajectory(xs.row(m).transpose());
    });

    // q_0 = prior, so the initial weights are uniform.
    Vector log_w = Vector::Constant(m_count, -std::log(static_cast<double>(m_count)));
    Vector log_post_prev(m_count); // exact log pi_{t-1}(x_{t-1}^m), Algorithm 1 path
    for (int m = 0; m < m_count; ++m)
        log_post_prev[m] = model.prior().log_density(xs.row(m).transpose());

    WeightHistory hist;
    hist.t0 = 0;
    hist.log_w_t0 = log_w;
    hist.log_post_t0 = log_post_prev;

    std::vector<RunRecord> records;
    records.reserve(static_cast<std::size_t>(steps));

    for (int t = 1; t <= steps; ++t) {
        const auto started = std::chrono::steady_clock::now();
        const Vector& y = data[static_cast<std::size_t>(t - 1)].y;
        const Matrix& r = model.obs_noise_cov(t);
        try {
            // Predicted observations at the current locations; these back the
            // gain, the kernel mean and ybar, and are reused by sample_forward.
            Matrix zs(m_count, n_y);
            parallel_for(m_count, [&](std::ptrdiff_t m) {
                const auto idx = static_cast<std::size_t>(m);
                if (frozen[idx]) return;
                const Vector* g = traj[idx]->observe(t);
                if (g != nullptr)
                    zs.row(m) = g->transpose();
                else
                    frozen[idx] = 1;
            });
            const int frozen_count = static_cast<int>(
                std::count(frozen.begin(), frozen.end(), static_cast<char>(1)));
            if (frozen_count == m_count)
                throw DegenerateEnsemble("run_smcs: every particle diverged", t);
            median_fill_rows(zs, frozen);

            const Vector w_linear = log_w.array().exp();
            AugmentedEnsemble aug{xs, zs, ids};
            const MomentEstimate mom = prior_moments(aug, w_linear);
            const GainBundle gain = kalman_gain(mom.mean, mom.cov, r, n_x);
            const KernelPair kernel = build_forward_kernel(gain, y, r, cfg.delta);

            ForwardSample fs = sample_forward(kernel, xs, zs, ids, seed, t);

            Vector log_l(m_count);
            parallel_for(m_count, [&](std::ptrdiff_t m) {
                log_l[m] = kernel.backward_log_density(xs.row(m).transpose(),
                                                       fs.x_new.row(m).transpose());
            });

            // One fresh trajectory per particle per step: it serves this
            // step's likelihood terms and, extended, the next step's gain.
            std::vector<std::unique_ptr<Trajectory>> traj_new(
                static_cast<std::size_t>(m_count));
            parallel_for(m_count, [&](std::ptrdiff_t m) {
                traj_new[static_cast<std::size_t>(m)] =
                    model.make_trajectory(fs.x_new.row(m).transpose());
            });

            bool refined = false;
            bool resampled = false;
            double ess_value = 0.0;
            Vector log_post_new(m_count);

            if (!weight_refinement) {
                // Algorithm with exact weights at every step.
                parallel_for(m_count, [&](std::ptrdiff_t m) {
                    const auto idx = static_cast<std::size_t>(m);
                    if (frozen[idx]) {
                        log_post_new[m] = kNegInf;
                        return;
                    }
                    log_post_new[m] =
                        log_posterior_at(model, data, *traj_new[idx],
                                         fs.x_new.row(m).transpose(), t);
                });
                for (int m = 0; m < m_count; ++m) {
                    const double inc = incremental_log_weight(
                        log_post_new[m], log_post_prev[m], log_l[m], fs.log_k[m]);
                    log_w[m] = frozen[static_cast<std::size_t>(m)] ? kNegInf : log_w[m] + inc;
                }
                normalize_log_weights(log_w);
                ess_value = ess(log_w);
                if (ess_value < 2.0)
                    throw DegenerateEnsemble("run_smcs: ESS < 2 after exact-weight step", t);
                refined = true;

                if (observer)
                    observer(StepTrace{t, &kernel, &log_w, &fs.x_new, ess_value, refined,
                                       ess_value <
                                           cfg.ess_resample_fraction * m_count});

                RunRecord rec;
                rec.t = t;
                const MeanStd stats = weighted_mean_std(fs.x_new, log_w.array().exp());
                rec.mean = stats.mean;
                rec.stddev = stats.stddev;
                rec.bias = stats.mean - truth;
                rec.ess = ess_value;
                rec.refined = refined;
                rec.frozen_count = frozen_count;

                if (ess_value < cfg.ess_resample_fraction * m_count) {
                    auto rng = make_stream(seed, StreamPurpose::resample,
                                           static_cast<std::uint64_t>(t), 0);
                    const auto indices = systematic_resample_indices(log_w, rng);
                    fs.x_new = gather_rows(fs.x_new, indices);
                    log_post_new = gather(log_post_new, indices);
                    gather_trajectories(traj_new, indices);
                    std::fill(frozen.begin(), frozen.end(), static_cast<char>(0));
                    log_w.setConstant(-std::log(static_cast<double>(m_count)));
                    resampled = true;
                }
                rec.resampled = resampled;
                rec.model_evals = model.eval_count();
                rec.wall_time_s = std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - started)
                                      .count();
                records.push_back(std::move(rec));

                log_post_prev = log_post_new;
            } else {
                // Weight-refinement variant: approximate weights first.
                Vector loglik_y(m_count);
                Vector log_q_new(m_count), log_q_old(m_count);
                parallel_for(m_count, [&](std::ptrdiff_t m) {
                    const auto idx = static_cast<std::size_t>(m);
                    log_q_new[m] = kernel.q_prev.logpdf(fs.x_new.row(m).transpose());
                    log_q_old[m] = kernel.q_prev.logpdf(xs.row(m).transpose());
                    if (frozen[idx]) {
                        loglik_y[m] = kNegInf;
                        return;
                    }
                    const Vector* g = traj_new[idx]->observe(t);
                    if (g == nullptr) {
                        frozen[idx] = 1;
                        loglik_y[m] = kNegInf;
                        return;
                    }
                    loglik_y[m] = model.obs_noise_dist(t).logpdf(y - *g);
                });
                for (int m = 0; m < m_count; ++m) {
                    const double inc = approx_incremental_log_weight(
                        log_q_new[m], log_q_old[m], loglik_y[m], log_l[m], fs.log_k[m]);
                    log_w[m] = frozen[static_cast<std::size_t>(m)] ? kNegInf : log_w[m] + inc;
                }
                normalize_log_weights(log_w);
                ess_value = ess(log_w);

                hist.steps.push_back(HistoryStep{t, kernel, xs, fs.x_new, fs.kernel_mean,
                                                 fs.log_k, log_l});

                const bool trigger = ess_value < cfg.ess_min_fraction * m_count ||
                                     (t - hist.t0) > cfg.delta_T_max || t == steps;
                if (trigger) {
                    parallel_for(m_count, [&](std::ptrdiff_t m) {
                        const auto idx = static_cast<std::size_t>(m);
                        if (frozen[idx]) {
                            log_post_new[m] = kNegInf;
                            return;
                        }
                        log_post_new[m] =
                            log_posterior_at(model, data, *traj_new[idx],
                                             fs.x_new.row(m).transpose(), t);
                    });
                    for (int m = 0; m < m_count; ++m)
                        log_w[m] = frozen[static_cast<std::size_t>(m)]
                                       ? kNegInf
                                       : refined_log_weight(hist, m, log_post_new[m]);
                    normalize_log_weights(log_w);
                    ess_value = ess(log_w);
                    if (ess_value < 2.0)
                        throw DegenerateEnsemble("run_smcs: ESS < 2 after exact-weight step",
                                                 t);
                    refined = true;
                }

                if (observer)
                    observer(StepTrace{t, &kernel, &log_w, &fs.x_new, ess_value, refined,
                                       refined && ess_value < cfg.ess_resample_fraction *
                                                                  m_count});

                RunRecord rec;
                rec.t = t;
                const MeanStd stats = weighted_mean_std(fs.x_new, log_w.array().exp());
                rec.mean = stats.mean;
                rec.stddev = stats.stddev;
                rec.bias = stats.mean - truth;
                rec.ess = ess_value;
                rec.refined = refined;
                rec.frozen_count = frozen_count;

                if (refined) {
                    if (ess_value < cfg.ess_resample_fraction * m_count) {
                        auto rng = make_stream(seed, StreamPurpose::resample,
                                               static_cast<std::uint64_t>(t), 0);
                        const auto indices = systematic_resample_indices(log_w, rng);
                        fs.x_new = gather_rows(fs.x_new, indices);
                        log_post_new = gather(log_post_new, indices);
                        gather_trajectories(traj_new, indices);
                        std::fill(frozen.begin(), frozen.end(), static_cast<char>(0));
                        log_w.setConstant(-std::log(static_cast<double>(m_count)));
                        resampled = true;
                    }
                    hist.t0 = t;
                    hist.log_w_t0 = log_w;
                    hist.log_post_t0 = log_post_new;
                    hist.steps.clear();
                }
                rec.resampled = resampled;
                rec.model_evals = model.eval_count();
                rec.wall_time_s = std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - started)
                                      .count();
                records.push_back(std::move(rec));
            }

            xs = std::move(fs.x_new);
            traj = std::move(traj_new);
        } catch (const DegenerateEnsemble& e) {
            throw DegenerateEnsemble(e.what(), e.step() >= 0 ? e.step() : t);
        } catch (const NotPositiveDefinite& e) {
            throw NotPositiveDefinite(std::string(e.what()) + " (step " + std::to_string(t) +
                                      ")");
        }
    }
    return records;
}

} // namespace

std::vector<RunRecord> run_enkf_smcs(const ForwardModel& model,
                                     const std::vector<ObservationRecord>& data,
                                     const SmcsConfig& config, const Vector& truth,
                                     const StepObserver& observer) {
    return run_smcs_core(model, data, config, truth, observer, /*weight_refinement=*/false);
}

std::vector<RunRecord> run_enkf_smcs_wr(const ForwardModel& model,
                                        const std::vector<ObservationRecord>& data,
                                        const SmcsConfig& config, const Vector& truth,
                                        const StepObserver& observer) {
    return run_smcs_core(model, data, config, truth, observer, /*weight_refinement=*/true);
}

} // namespace enkfsmcs
