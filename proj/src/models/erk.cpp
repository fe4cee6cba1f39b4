#include "enkfsmcs/models/erk.hpp"

#include "enkfsmcs/ode.hpp"

namespace enkfsmcs {
namespace erk {

namespace {
const std::array<std::array<double, kNumRates>, kNumStates> kS = {{
    {-1, 0, 1, 0, 0, 0, 0},
    {-1, 0, 0, 0, 0, 0, 1},
    {1, -1, 0, 0, 0, 0, 0},
    {0, 1, -1, 0, 0, 0, 0},
    {0, 0, 1, -1, 0, 0, 0},
    {0, 0, 1, 0, 0, -1, 0},
    {0, 0, 0, -1, 1, 0, 0},
    {0, 0, 0, 1, -1, 0, 0},
    {0, -1, 0, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, -1, 1},
    {0, 0, 0, 0, 0, 1, -1},
}};

const std::array<double, kNumStates> kInitial = {66.0, 0.054, 0.019, 59.0, 0.09, 0.012,
                                                 65.0, 26.0, 175.0, 161.0, 2.18};

const std::array<double, kNumStates> kNoiseStd = {0.005, 5e-5, 2e-5, 0.035, 0.0005, 5e-6,
                                                  0.05, 0.02, 0.03, 0.003, 0.002};

const std::array<double, kNumStates> kTruth = {0.5242, 0.0075, 0.6108, 0.0025, 0.0371, 0.8101,
                                               0.0713, 0.0687, 0.96, 0.0012, 0.872};

const std::array<double, kNumStates> kPriorMean = {0.5, 0.1, 0.62, 0.04, -0.5, 0.8,
                                                   0.0, 0.4, 0.9, 0.0, 0.9};

const std::array<double, kNumStates> kPriorStd = {0.05, 0.03, 0.01, 0.04, 0.5, 0.02,
                                                  0.05, 0.3, 0.1, 0.005, 0.05};
} // namespace

void rates(const double* x, const double* k, double* v) {
    v[0] = k[0] * x[0] * x[1] - k[1] * x[2];
    v[1] = k[2] * x[2] * x[8] - k[3] * x[3];
    v[2] = k[4] * x[3];
    v[3] = k[5] * x[4] * x[6] - k[6] * x[7];
    v[4] = k[7] * x[7];
    v[5] = k[8] * x[5] * x[9] - k[9] * x[10];
    v[6] = k[10] * x[10];
}

void rhs(const double* x, const double* k, double* dx) {
    double v[kNumRates];
    rates(x, k, v);
    for (int i = 0; i < kNumStates; ++i) {
        double acc = 0.0;
        for (int j = 0; j < kNumRates; ++j) acc += kS[i][j] * v[j];
        dx[i] = acc;
    }
}

const std::array<std::array<double, kNumRates>, kNumStates>& stoichiometric_matrix() {
    return kS;
}
const std::array<double, kNumStates>& initial_concentrations() { return kInitial; }
const std::array<double, kNumStates>& noise_std_all_states() { return kNoiseStd; }
const std::array<double, kNumStates>& true_parameters() { return kTruth; }
const std::array<double, kNumStates>& prior_mean() { return kPriorMean; }
const std::array<double, kNumStates>& prior_std() { return kPriorStd; }

} // namespace erk

Vector erk_rhs(const Vector& state, const Vector& params) {
    if (state.size() != erk::kNumStates || params.size() != erk::kNumStates)
        throw std::invalid_argument("erk_rhs: expects 11 states and 11 parameters");
    Vector out(erk::kNumStates);
    erk::rhs(state.data(), params.data(), out.data());
    return out;
}

namespace {

class ErkTrajectory : public Trajectory {
public:
    ErkTrajectory(const Vector& params, double dt, int substeps)
        : dt_(dt), substeps_(substeps) {
        for (int i = 0; i < erk::kNumStates; ++i) {
            k_[i] = params[i];
            state_[i] = erk::initial_concentrations()[i];
            if (!std::isfinite(k_[i])) dead_ = true;
        }
    }

    std::unique_ptr<Trajectory> clone() const override {
        return std::make_unique<ErkTrajectory>(*this);
    }

protected:
    void extend_one() override {
        auto f = [this](const double* s, double* ds) { erk::rhs(s, k_.data(), ds); };
        try {
            std::array<double, 5 * erk::kNumStates> work{};
            rk4_advance(state_.data(), erk::kNumStates, f, dt_, substeps_, work.data());
        } catch (const NonFiniteState&) {
            dead_ = true;
            return;
        }
        Vector g(static_cast<int>(erk::kObservedStates.size()));
        for (std::size_t i = 0; i < erk::kObservedStates.size(); ++i)
            g[static_cast<int>(i)] = state_[erk::kObservedStates[i]];
        obs_.push_back(std::move(g));
    }

private:
    double dt_;
    int substeps_;
    std::array<double, erk::kNumStates> k_{};
    std::array<double, erk::kNumStates> state_{};
};

PriorSpec make_erk_prior() {
    Vector mean(erk::kNumStates);
    Matrix cov = Matrix::Zero(erk::kNumStates, erk::kNumStates);
    for (int i = 0; i < erk::kNumStates; ++i) {
        mean[i] = erk::prior_mean()[i];
        cov(i, i) = erk::prior_std()[i] * erk::prior_std()[i];
    }
    return PriorSpec::gaussian(std::move(mean), std::move(cov));
}

Matrix make_erk_noise_cov() {
    const int ny = static_cast<int>(erk::kObservedStates.size());
    Matrix r = Matrix::Zero(ny, ny);
    for (int i = 0; i < ny; ++i) {
        const double sd = erk::noise_std_all_states()[erk::kObservedStates[static_cast<std::size_t>(i)]];
        r(i, i) = sd * sd;
    }
    return r;
}

} // namespace

ErkModel::ErkModel(int steps, double dt, int substeps)
    : steps_(steps),
      dt_(dt),
      substeps_(substeps),
      noise_cov_(make_erk_noise_cov()),
      noise_dist_(Vector::Zero(static_cast<int>(erk::kObservedStates.size())), noise_cov_),
      prior_(make_erk_prior()) {}

Vector ErkModel::truth() {
    Vector k(erk::kNumStates);
    for (int i = 0; i < erk::kNumStates; ++i) k[i] = erk::true_parameters()[i];
    return k;
}

std::unique_ptr<Trajectory> ErkModel::do_make_trajectory(const Vector& x) const {
    return std::make_unique<ErkTrajectory>(x, dt_, substeps_);
}

} // namespace enkfsmcs
