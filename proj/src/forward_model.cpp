#include "enkfsmcs/forward_model.hpp"

#include "enkfsmcs/errors.hpp"

namespace enkfsmcs {

std::vector<ObservationRecord> simulate_observations(const ForwardModel& model,
                                                     const Vector& x_true,
                                                     std::uint64_t seed) {
    auto traj = model.make_trajectory(x_true);
    std::vector<ObservationRecord> data;
    data.reserve(static_cast<std::size_t>(model.step_count()));
    for (int t = 1; t <= model.step_count(); ++t) {
        const Vector* g = traj->observe(t);
        if (g == nullptr)
            throw NonFiniteState("simulate_observations: truth trajectory diverged at step " +
                                 std::to_string(t));
        auto rng = make_stream(seed, StreamPurpose::data_noise, static_cast<std::uint64_t>(t), 0);
        ObservationRecord rec;
        rec.t = t;
        rec.y = *g + model.obs_noise_dist(t).sample(rng);
        data.push_back(std::move(rec));
    }
    return data;
}

} // namespace enkfsmcs
