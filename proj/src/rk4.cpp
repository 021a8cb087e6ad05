#include "qdae/rk4.hpp"

#include <algorithm>
#include <sstream>

#include "qdae/errors.hpp"

namespace qdae::oracle {

Trajectory rk4_solve(const power::DaeSystem& system, double t0, double t1,
                     const Rk4Options& options,
                     std::span<const double> initial_state) {
    if (!(options.step > 0) || !(options.fine_step > 0))
        throw std::invalid_argument("integration step must be positive");
    if (!(t1 > t0))
        throw std::invalid_argument("integration interval is empty");

    const int dim = system.ode_dim();
    const int nv = system.num_vars();
    std::vector<double> y(initial_state.begin(), initial_state.end());
    if (static_cast<int>(y.size()) != dim)
        throw std::invalid_argument("initial state dimension mismatch");

    const auto outs = system.output_vars();
    Trajectory traj;
    for (const auto& o : outs)
        traj.names.push_back(o.name);
    traj.values.assign(outs.size(), {});

    std::vector<double> f(nv), fp(nv), fpp(nv);
    auto emit = [&](double t) {
        system.ode_point(t, y, f, fp, fpp);
        traj.times.push_back(t);
        for (std::size_t c = 0; c < outs.size(); ++c) {
            const auto& o = outs[c];
            double v = 0;
            if (o.order == 0) v = f[o.var];
            else if (o.order == 1) v = fp[o.var];
            else v = fpp[o.var];
            traj.values[c].push_back(v);
        }
    };

    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    auto rhs = [&](double t, std::span<const double> yy,
                   std::span<double> dy) { system.ode_rhs(t, yy, dy); };

    emit(t0);
    for (const power::TimeSegment& seg : system.time_segments(t0, t1)) {
        const double h0 = seg.fine_step ? options.fine_step : options.step;
        const double len = seg.t_end - seg.t_start;
        const long steps = std::max(1L, std::lround(len / h0));
        const double h = len / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
            const double t = seg.t_start + h * static_cast<double>(s);
            rk4_step(rhs, t, h, y, k1, k2, k3, k4, tmp);
            for (double v : y)
                if (!std::isfinite(v)) {
                    std::ostringstream msg;
                    msg << "integration diverged at t = " << t + h;
                    throw NumericalError(msg.str());
                }
            emit(t + h);
        }
    }
    traj.validate();
    return traj;
}

Trajectory rk4_solve(const power::DaeSystem& system, double t0, double t1,
                     const Rk4Options& options) {
    const std::vector<double> y0 = system.ode_initial_state();
    return rk4_solve(system, t0, t1, options, y0);
}

} // namespace qdae::oracle
