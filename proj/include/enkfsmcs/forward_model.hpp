#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <vector>

#include "enkfsmcs/gaussian.hpp"
#include "enkfsmcs/prior.hpp"

namespace enkfsmcs {

struct ObservationRecord {
    int t = 0;  // 1-based step index
    Vector y;
};

// Per-particle evaluation cache for one parameter vector x.
//
// observe(t) returns G_t(x) and extends the underlying trajectory as needed;
// all predicted observations up to the deepest t requested stay cached, so a
// full-likelihood evaluation at x costs one trajectory integration, not t.
// Returns nullptr once the trajectory has diverged at or before step t.
class Trajectory {
public:
    virtual ~Trajectory() = default;

    const Vector* observe(int t) {
        if (t < 1) throw std::invalid_argument("Trajectory::observe: t >= 1");
        while (static_cast<int>(obs_.size()) < t && !dead_) extend_one();
        if (dead_ && static_cast<int>(obs_.size()) < t) return nullptr;
        return &obs_[static_cast<std::size_t>(t - 1)];
    }

    bool alive() const { return !dead_; }
    int steps_cached() const { return static_cast<int>(obs_.size()); }

    virtual std::unique_ptr<Trajectory> clone() const = 0;

protected:
    // Appends G_{k+1}(x) to obs_ where k = obs_.size(), or sets dead_.
    virtual void extend_one() = 0;

    std::vector<Vector> obs_;
    bool dead_ = false;
};

// Deterministic map x -> G_t(x) for t = 1..T plus observation-noise model
// and prior. evaluate() is pure; the only mutable state is the counter of
// fresh trajectory integrations.
class ForwardModel {
public:
    virtual ~ForwardModel() = default;

    virtual int param_dim() const = 0;  // n_x
    virtual int obs_dim() const = 0;    // n_y
    virtual int step_count() const = 0; // T
    virtual double dt_obs() const = 0;
    virtual const Matrix& obs_noise_cov(int t) const = 0;       // R_t
    virtual const GaussianDist& obs_noise_dist(int t) const = 0; // N(0, R_t)
    virtual const PriorSpec& prior() const = 0;
    virtual std::string name() const = 0;

    std::unique_ptr<Trajectory> make_trajectory(const Vector& x) const {
        evals_.fetch_add(1, std::memory_order_relaxed);
        return do_make_trajectory(x);
    }

    long long eval_count() const { return evals_.load(std::memory_order_relaxed); }
    void reset_eval_count() const { evals_.store(0, std::memory_order_relaxed); }

protected:
    virtual std::unique_ptr<Trajectory> do_make_trajectory(const Vector& x) const = 0;

private:
    mutable std::atomic<long long> evals_{0};
};

// y_t = G_t(x_true) + eta_t with eta_t ~ N(0, R_t), for t = 1..T.
std::vector<ObservationRecord> simulate_observations(const ForwardModel& model,
                                                     const Vector& x_true,
                                                     std::uint64_t seed);

} // namespace enkfsmcs
