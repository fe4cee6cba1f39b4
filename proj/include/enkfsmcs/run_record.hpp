#pragma once

#include "enkfsmcs/linalg.hpp"

namespace enkfsmcs {

// Per-step diagnostics emitted by every driver.
struct RunRecord {
    int t = 0;
    Vector mean;     // weighted posterior mean per parameter
    Vector stddev;   // weighted posterior std per parameter
    Vector bias;     // mean - truth per parameter
    double ess = 0.0;
    bool refined = false;
    bool resampled = false;
    long long model_evals = 0; // cumulative fresh trajectory integrations
    double wall_time_s = 0.0;  // not serialized; reruns must be byte-identical
    int frozen_count = 0;      // particles with diverged trajectories this step
};

} // namespace enkfsmcs
