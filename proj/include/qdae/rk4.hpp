#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qdae/dae.hpp"
#include "qdae/trajectory.hpp"

namespace qdae::oracle {

struct Rk4Options {
    double step = 1e-4;
    double fine_step = 1e-5; // used on segments flagged fine (fault window)
};

/// One classic fourth-order step; rhs(t, y, dydt).
template <class Rhs>
void rk4_step(Rhs&& rhs, double t, double h, std::span<double> y,
              std::span<double> k1, std::span<double> k2, std::span<double> k3,
              std::span<double> k4, std::span<double> tmp) {
    const std::size_t n = y.size();
    rhs(t, y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(t + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(t + h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

/// Fixed-step integration of the system's first-order form over [t0, t1],
/// segmented at discontinuity times, with dense output at every step.
/// Throws NumericalError when the state leaves the finite range.
Trajectory rk4_solve(const power::DaeSystem& system, double t0, double t1,
                     const Rk4Options& options,
                     std::span<const double> initial_state);

Trajectory rk4_solve(const power::DaeSystem& system, double t0, double t1,
                     const Rk4Options& options = {});

} // namespace qdae::oracle
