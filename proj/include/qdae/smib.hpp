#pragma once

#include <filesystem>

#include "qdae/dae.hpp"

namespace qdae::power {

/// Swing-equation constants of the single-machine-infinite-bus model:
/// delta'' = k1 - k2 sin(delta) - k3 delta'.
struct SmibParams {
    double k1 = 5.0;   // rad/s^2
    double k2 = 10.0;  // rad/s^2
    double k3 = 1.7;   // 1/s
    double delta0 = -1.0; // rad
    double domega0 = 7.0; // rad/s

    void validate() const;
    static SmibParams from_json_file(const std::filesystem::path& path);
};

/// Residual of the swing equation at one point; zero iff the dynamics hold.
double smib_residual(const SmibParams& p, double t, double delta,
                     double ddelta, double d2delta);

class SmibSystem final : public DaeSystem {
  public:
    explicit SmibSystem(SmibParams params);

    const SmibParams& params() const { return params_; }

    std::string name() const override { return "smib"; }
    int num_vars() const override { return 1; }
    int num_equations() const override { return 1; }
    int var_order(int var) const override;
    std::vector<std::string> var_names() const override { return {"delta"}; }

    void residuals(double t, std::span<const double> f,
                   std::span<const double> fp, std::span<const double> fpp,
                   std::span<double> out) const override;
    void residual_partials(double t, std::span<const double> f,
                           std::span<const double> fp,
                           std::span<const double> fpp,
                           ResidualPartials& out) const override;

    std::vector<BoundaryCondition> initial_conditions() const override;
    std::vector<OutputVar> output_vars() const override;

    int ode_dim() const override { return 2; }
    std::vector<double> ode_initial_state() const override;
    void ode_rhs(double t, std::span<const double> y,
                 std::span<double> dydt) const override;
    void ode_point(double t, std::span<const double> y, std::span<double> f,
                   std::span<double> fp, std::span<double> fpp) const override;

  private:
    SmibParams params_;
};

} // namespace qdae::power
