#pragma once

#include <array>
#include <complex>
#include <filesystem>
#include <optional>

#include "qdae/dae.hpp"

namespace qdae::power {

using cplx = std::complex<double>;
using YMatrix = std::array<std::array<cplx, 3>, 3>;

/// Classical-model machine constants, one row per generator.
struct MachineParams {
    double h = 0;          // inertia constant, s
    double d = 0;          // damping
    double ra = 0;         // armature resistance, pu
    double xd_prime = 0;   // transient reactance, pu
    double pm = 0;         // mechanical power, pu
    double eq_prime = 0;   // internal voltage magnitude, pu
    double delta_init = 0; // rad
    double domega_init = 0;
};

enum class PhaseLabel { PreFault, FaultOn, PostFault };

std::string to_string(PhaseLabel label);

struct NetworkPhase {
    PhaseLabel label = PhaseLabel::PreFault;
    double t_start = 0, t_end = 0;
    YMatrix y{};
};

/// Reference rows shipped alongside the machine table, used by validation
/// and tests rather than by the dynamics.
struct ReferenceRows {
    std::array<cplx, 3> terminal_current{};
    std::array<double, 3> i_d{};
    std::array<double, 3> i_q{};
};

/// Full dataset of the three-machine benchmark: machine table, the three
/// reduced admittance matrices, the phase times, and the synchronous speed.
struct WsccData {
    std::array<MachineParams, 3> machines{};
    std::vector<NetworkPhase> phases; // ordered, tiling the time domain
    double omega_s = 0;
    std::optional<ReferenceRows> reference;

    /// Loads and validates. The pre-fault matrix must reproduce the machine
    /// table's equilibrium (max |Pm - Pe| below the gate) or the file is
    /// rejected.
    static WsccData from_json_file(const std::filesystem::path& path);

    const NetworkPhase& phase_at(double t) const;
};

/// Pre-fault equilibrium gate threshold, pu.
inline constexpr double kEquilibriumGatePu = 2e-2;

struct AlgebraicSolution {
    std::array<cplx, 3> e_prime{};  // internal voltages, network frame
    std::array<cplx, 3> current{};  // injected currents I = Y E'
    std::array<cplx, 3> terminal{}; // terminal voltages
    std::array<double, 3> pe{};     // electric power, pu
};

/// Closed-form network solve for given rotor angles under one admittance
/// matrix. Handles nonzero armature resistance.
AlgebraicSolution wscc_algebraic(std::span<const double> deltas,
                                 std::span<const MachineParams> machines,
                                 const YMatrix& y);

/// d Pe_i / d delta_j for the same inputs.
std::array<std::array<double, 3>, 3>
wscc_pe_jacobian(std::span<const double> deltas,
                 std::span<const MachineParams> machines, const YMatrix& y);

class WsccSystem final : public DaeSystem {
  public:
    explicit WsccSystem(WsccData data);

    const WsccData& data() const { return data_; }

    std::string name() const override { return "wscc"; }
    int num_vars() const override { return 6; } // delta1..3, domega1..3
    int num_equations() const override { return 6; }
    int var_order(int var) const override;
    std::vector<std::string> var_names() const override;

    void residuals(double t, std::span<const double> f,
                   std::span<const double> fp, std::span<const double> fpp,
                   std::span<double> out) const override;
    void residual_partials(double t, std::span<const double> f,
                           std::span<const double> fp,
                           std::span<const double> fpp,
                           ResidualPartials& out) const override;

    std::vector<BoundaryCondition> initial_conditions() const override;
    std::vector<OutputVar> output_vars() const override;

    int ode_dim() const override { return 6; }
    std::vector<double> ode_initial_state() const override;
    void ode_rhs(double t, std::span<const double> y,
                 std::span<double> dydt) const override;
    void ode_point(double t, std::span<const double> y, std::span<double> f,
                   std::span<double> fp, std::span<double> fpp) const override;

    std::vector<TimeSegment> time_segments(double t0, double t1) const override;
    std::pair<double, double> time_domain() const override;

  private:
    WsccData data_;
};

} // namespace qdae::power
