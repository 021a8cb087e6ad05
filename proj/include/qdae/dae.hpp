#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace qdae::power {

/// One condition the solution must satisfy: derivative `order` of state
/// variable `var` equals `value` at absolute time `time`.
struct BoundaryCondition {
    int var = 0;
    int order = 0; // 0 = value, 1 = first derivative
    double time = 0.0;
    double value = 0.0;
};

/// How a trajectory column is produced from the modeled state variables.
struct OutputVar {
    std::string name;
    int var = 0;
    int order = 0;
};

/// Partial derivatives of each residual with respect to every variable's
/// value and derivatives, indexed [equation][variable].
struct ResidualPartials {
    std::vector<std::vector<double>> df, dfp, dfpp;

    static ResidualPartials zeros(int num_equations, int num_vars) {
        ResidualPartials p;
        p.df.assign(num_equations, std::vector<double>(num_vars, 0.0));
        p.dfp.assign(num_equations, std::vector<double>(num_vars, 0.0));
        p.dfpp.assign(num_equations, std::vector<double>(num_vars, 0.0));
        return p;
    }
};

struct TimeSegment {
    double t_start = 0, t_end = 0;
    bool fine_step = false;
};

/// A residual/boundary problem over named state variables, plus the
/// first-order ODE form consumed by the reference integrator.
class DaeSystem {
  public:
    virtual ~DaeSystem() = default;

    virtual std::string name() const = 0;
    virtual int num_vars() const = 0;
    virtual int num_equations() const = 0;
    virtual int var_order(int var) const = 0; // highest derivative order
    virtual std::vector<std::string> var_names() const = 0;

    /// Residual vector at one point. f, fp, fpp are per-variable value and
    /// derivatives (fpp entries are ignored for first-order variables).
    virtual void residuals(double t, std::span<const double> f,
                           std::span<const double> fp,
                           std::span<const double> fpp,
                           std::span<double> out) const = 0;

    virtual void residual_partials(double t, std::span<const double> f,
                                   std::span<const double> fp,
                                   std::span<const double> fpp,
                                   ResidualPartials& out) const = 0;

    virtual std::vector<BoundaryCondition> initial_conditions() const = 0;

    virtual std::vector<OutputVar> output_vars() const = 0;

    // First-order ODE form.
    virtual int ode_dim() const = 0;
    virtual std::vector<double> ode_initial_state() const = 0;
    virtual void ode_rhs(double t, std::span<const double> y,
                         std::span<double> dydt) const = 0;

    /// Maps one ODE state to the residual form's (f, fp, fpp).
    virtual void ode_point(double t, std::span<const double> y,
                           std::span<double> f, std::span<double> fp,
                           std::span<double> fpp) const = 0;

    /// Integration segments within [t0, t1]; boundaries mark discontinuous
    /// right-hand-side changes.
    virtual std::vector<TimeSegment> time_segments(double t0, double t1) const {
        return {TimeSegment{t0, t1, false}};
    }

    virtual std::pair<double, double> time_domain() const {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    }
};

} // namespace qdae::power
