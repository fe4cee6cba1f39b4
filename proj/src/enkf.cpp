#include "enkfsmcs/enkf.hpp"

#include <chrono>
#include <numeric>

#include "enkfsmcs/errors.hpp"
#include "enkfsmcs/parallel.hpp"

namespace enkfsmcs {

Matrix AugmentedEnsemble::stacked() const {
    Matrix u(xs.rows(), xs.cols() + zs.cols());
    u << xs, zs;
    return u;
}

MomentEstimate prior_moments(const AugmentedEnsemble& ens, const Vector& weights) {
    if (ens.zs.rows() != ens.xs.rows())
        throw std::invalid_argument("prior_moments: xs/zs row mismatch");
    return weighted_moments(ens.stacked(), weights);
}

GainBundle kalman_gain(const Vector& mu_tilde, const Matrix& c_tilde, const Matrix& r,
                       int n_x) {
    const int n_y = static_cast<int>(r.rows());
    if (c_tilde.rows() != n_x + n_y)
        throw std::invalid_argument("kalman_gain: covariance/dimension mismatch");

    const Matrix innovation_cov = symmetrize(c_tilde.bottomRightCorner(n_y, n_y) + r);
    const Matrix c_ht = c_tilde.rightCols(n_y); // C~ H^T for H = [0, I]

    GainBundle gain;
    gain.Q = solve_spd(innovation_cov, c_ht.transpose()).transpose();
    gain.Qx = gain.Q.topRows(n_x);
    gain.mu_tilde = mu_tilde;
    gain.C_tilde = c_tilde;
    gain.n_x = n_x;
    gain.n_y = n_y;
    return gain;
}

void enkf_update(AugmentedEnsemble& ens, const GainBundle& gain, const Vector& y,
                 const GaussianDist& obs_noise, std::uint64_t seed, int t) {
    const int m_count = ens.count();
    const Matrix q_z = gain.Q.bottomRows(gain.n_y);
    parallel_for(m_count, [&](std::ptrdiff_t m) {
        auto rng = make_stream(seed, StreamPurpose::obs_perturbation,
                               static_cast<std::uint64_t>(t), ens.stream_ids[static_cast<std::size_t>(m)]);
        const Vector eta = obs_noise.sample(rng);
        const Vector innovation = y - ens.zs.row(m).transpose() + eta;
        ens.xs.row(m) += (gain.Qx * innovation).transpose();
        ens.zs.row(m) += (q_z * innovation).transpose();
    });
}

std::vector<RunRecord> enkf_run(const ForwardModel& model,
                                const std::vector<ObservationRecord>& data,
                                int particle_count, std::uint64_t seed,
                                const Vector& truth) {
    const int steps = model.step_count();
    if (static_cast<int>(data.size()) < steps)
        throw std::invalid_argument("enkf_run: data does not cover all steps");
    const int n_x = model.param_dim();
    const int n_y = model.obs_dim();

    model.reset_eval_count();

    AugmentedEnsemble ens;
    ens.xs.resize(particle_count, n_x);
    ens.zs.resize(particle_count, n_y);
    ens.stream_ids.resize(static_cast<std::size_t>(particle_count));
    std::iota(ens.stream_ids.begin(), ens.stream_ids.end(), 0u);

    parallel_for(particle_count, [&](std::ptrdiff_t m) {
        auto rng = make_stream(seed, StreamPurpose::prior_draw, 0,
                               ens.stream_ids[static_cast<std::size_t>(m)]);
        ens.xs.row(m) = model.prior().sample(rng).transpose();
    });

    const Vector uniform = Vector::Constant(particle_count, 1.0 / particle_count);
    std::vector<RunRecord> records;
    records.reserve(static_cast<std::size_t>(steps));

    for (int t = 1; t <= steps; ++t) {
        const auto started = std::chrono::steady_clock::now();
        try {
            std::vector<char> frozen(static_cast<std::size_t>(particle_count), 0);
            parallel_for(particle_count, [&](std::ptrdiff_t m) {
                auto traj = model.make_trajectory(ens.xs.row(m).transpose());
                const Vector* g = traj->observe(t);
                if (g != nullptr)
                    ens.zs.row(m) = g->transpose();
                else
                    frozen[static_cast<std::size_t>(m)] = 1;
            });
            const int frozen_count = static_cast<int>(
                std::count(frozen.begin(), frozen.end(), static_cast<char>(1)));
            if (frozen_count == particle_count)
                throw DegenerateEnsemble("enkf_run: every particle diverged", t);
            median_fill_rows(ens.zs, frozen);

            const MomentEstimate mom = prior_moments(ens, uniform);
            const GainBundle gain = kalman_gain(mom.mean, mom.cov, model.obs_noise_cov(t), n_x);
            enkf_update(ens, gain, data[static_cast<std::size_t>(t - 1)].y,
                        model.obs_noise_dist(t), seed, t);

            RunRecord rec;
            rec.t = t;
            const MeanStd stats = weighted_mean_std(ens.xs, uniform);
            rec.mean = stats.mean;
            rec.stddev = stats.stddev;
            rec.bias = stats.mean - truth;
            rec.ess = static_cast<double>(particle_count);
            rec.model_evals = model.eval_count();
            rec.frozen_count = frozen_count;
            rec.wall_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count();
            records.push_back(std::move(rec));
        } catch (const DegenerateEnsemble& e) {
            throw DegenerateEnsemble(e.what(), e.step() >= 0 ? e.step() : t);
        } catch (const NotPositiveDefinite& e) {
            throw NotPositiveDefinite(std::string(e.what()) + " (step " + std::to_string(t) +
                                      ")");
        }
    }
    return records;
}

} // namespace enkfsmcs
