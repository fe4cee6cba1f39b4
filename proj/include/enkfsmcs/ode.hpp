#pragma once

#include <cmath>
#include <vector>

#include "enkfsmcs/errors.hpp"
#include "enkfsmcs/linalg.hpp"

namespace enkfsmcs {

// States with entries beyond this magnitude are treated as divergent: the
// quadratic terms of the benchmark right-hand sides would overflow on the
// next evaluation, and such particles would poison ensemble moments.
constexpr double kStateMagnitudeLimit = 1e100;

inline bool state_ok(const double* s, int n) {
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(s[i]) || std::abs(s[i]) > kStateMagnitudeLimit) return false;
    }
    return true;
}

// Classical RK4 on a raw state vector; rhs(const double* s, double* ds).
// work must hold 5*n doubles. Throws NonFiniteState on divergence.
template <class Rhs>
void rk4_advance(double* s, int n, Rhs&& rhs, double dt_total, int substeps, double* work) {
    const double h = dt_total / static_cast<double>(substeps);
    double* k1 = work;
    double* k2 = work + n;
    double* k3 = work + 2 * n;
    double* k4 = work + 3 * n;
    double* tmp = work + 4 * n;
    for (int step = 0; step < substeps; ++step) {
        rhs(s, k1);
        for (int i = 0; i < n; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
        rhs(tmp, k2);
        for (int i = 0; i < n; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
        rhs(tmp, k3);
        for (int i = 0; i < n; ++i) tmp[i] = s[i] + h * k3[i];
        rhs(tmp, k4);
        for (int i = 0; i < n; ++i)
            s[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!state_ok(s, n)) throw NonFiniteState("rk4_advance: state diverged");
    }
}

// Classical 4th-order Runge-Kutta over one observation interval with
// step dt_obs/substeps; returns the state at t + dt_obs.
template <class Rhs>
Vector integrate_fixed_rk4(Rhs&& rhs, const Vector& state0, double dt_obs, int substeps) {
    if (substeps < 1) throw std::invalid_argument("integrate_fixed_rk4: substeps >= 1");
    if (!(dt_obs > 0.0)) throw std::invalid_argument("integrate_fixed_rk4: dt_obs > 0");
    const int n = static_cast<int>(state0.size());
    Vector s = state0;
    std::vector<double> work(5 * static_cast<std::size_t>(n));
    auto adapter = [&](const double* in, double* out) {
        Eigen::Map<const Vector> xin(in, n);
        Eigen::Map<Vector> xout(out, n);
        xout = rhs(xin);
    };
    rk4_advance(s.data(), n, adapter, dt_obs, substeps, work.data());
    return s;
}

} // namespace enkfsmcs
