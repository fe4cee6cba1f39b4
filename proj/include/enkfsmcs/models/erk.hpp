#pragma once

#include <array>

#include "enkfsmcs/forward_model.hpp"

namespace enkfsmcs {

// ERK-pathway kinetic network: 11 species, 7 reactions, dx/dtau = S V(x).
namespace erk {
constexpr int kNumStates = 11;
constexpr int kNumRates = 7;

// Reaction rates V(x); k holds the 11 kinetic parameters.
void rates(const double* x, const double* k, double* v);

// dx/dtau = S V(x).
void rhs(const double* x, const double* k, double* dx);

const std::array<std::array<double, kNumRates>, kNumStates>& stoichiometric_matrix();

// Species initial concentrations.
const std::array<double, kNumStates>& initial_concentrations();
// Observation-noise standard deviation per species.
const std::array<double, kNumStates>& noise_std_all_states();
// Ground-truth kinetic parameters.
const std::array<double, kNumStates>& true_parameters();
// Gaussian prior mean / standard deviation per kinetic parameter.
const std::array<double, kNumStates>& prior_mean();
const std::array<double, kNumStates>& prior_std();
// Only these species are observable.
constexpr std::array<int, 4> kObservedStates = {0, 3, 6, 9}; // x1, x4, x7, x10
} // namespace erk

// Eigen-friendly wrapper around erk::rhs for tests and generic callers.
Vector erk_rhs(const Vector& state, const Vector& params);

// Estimates the 11 kinetic parameters from noisy observations of
// {x1, x4, x7, x10} at tau = t * dt.
class ErkModel : public ForwardModel {
public:
    ErkModel(int steps = 50, double dt = 0.001, int substeps = 4);

    int param_dim() const override { return erk::kNumStates; }
    int obs_dim() const override { return static_cast<int>(erk::kObservedStates.size()); }
    int step_count() const override { return steps_; }
    double dt_obs() const override { return dt_; }
    const Matrix& obs_noise_cov(int) const override { return noise_cov_; }
    const GaussianDist& obs_noise_dist(int) const override { return noise_dist_; }
    const PriorSpec& prior() const override { return prior_; }
    std::string name() const override { return "erk"; }

    static Vector truth();
    int substeps() const { return substeps_; }

protected:
    std::unique_ptr<Trajectory> do_make_trajectory(const Vector& x) const override;

private:
    int steps_;
    double dt_;
    int substeps_;
    Matrix noise_cov_;
    GaussianDist noise_dist_;
    PriorSpec prior_;
};

} // namespace enkfsmcs
