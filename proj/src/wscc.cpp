#include "qdae/wscc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qdae/errors.hpp"

namespace qdae::power {

std::string to_string(PhaseLabel label) {
    switch (label) {
    case PhaseLabel::PreFault: return "pre_fault";
    case PhaseLabel::FaultOn: return "fault_on";
    case PhaseLabel::PostFault: return "post_fault";
    }
    return "?";
}

namespace {

PhaseLabel parse_label(const std::string& s) {
    if (s == "pre_fault") return PhaseLabel::PreFault;
    if (s == "fault_on") return PhaseLabel::FaultOn;
    if (s == "post_fault") return PhaseLabel::PostFault;
    throw ConfigError("unknown network phase label: " + s);
}

YMatrix parse_y(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError("admittance matrix must be 3x3");
    YMatrix y{};
    for (int r = 0; r < 3; ++r) {
        if (!j[r].is_array() || j[r].size() != 3)
            throw ConfigError("admittance matrix must be 3x3");
        for (int c = 0; c < 3; ++c) {
            const auto& cell = j[r][c];
            if (!cell.is_array() || cell.size() != 2)
                throw ConfigError(
                    "admittance entries must be [real, imag] pairs");
            y[r][c] = cplx(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return y;
}

} // namespace

WsccData WsccData::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open system file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("failed to parse " + path.string() + ": " + e.what());
    }

    WsccData data;
    try {
        data.omega_s = j.at("omega_s").get<double>();
        const auto& ms = j.at("machines");
        if (!ms.is_array() || ms.size() != 3)
            throw ConfigError("wscc dataset needs exactly three machines");
        bool have_ref = true;
        ReferenceRows ref;
        for (int i = 0; i < 3; ++i) {
            const auto& m = ms[i];
            MachineParams& p = data.machines[i];
            p.h = m.at("h").get<double>();
            p.d = m.at("d").get<double>();
            p.ra = m.at("ra").get<double>();
            p.xd_prime = m.at("xd_prime").get<double>();
            p.pm = m.at("pm").get<double>();
            p.eq_prime = m.at("eq_prime").get<double>();
            p.delta_init = m.at("delta0").get<double>();
            p.domega_init = m.at("domega0").get<double>();
            if (!(p.h > 0))
                throw ConfigError("machine inertia must be positive");
            if (m.contains("it_real") && m.contains("it_imag")) {
                ref.terminal_current[i] =
                    cplx(m["it_real"].get<double>(), m["it_imag"].get<double>());
                if (m.contains("i_d")) ref.i_d[i] = m["i_d"].get<double>();
                if (m.contains("i_q")) ref.i_q[i] = m["i_q"].get<double>();
            } else {
                have_ref = false;
            }
        }
        if (have_ref)
            data.reference = ref;

        for (const auto& ph : j.at("phases")) {
            NetworkPhase p;
            p.label = parse_label(ph.at("label").get<std::string>());
            p.t_start = ph.at("t_start").get<double>();
            p.t_end = ph.at("t_end").get<double>();
            p.y = parse_y(ph.at("y"));
            data.phases.push_back(p);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("wscc system file " + path.string() +
                          " is missing a key: " + e.what());
    }

    if (data.phases.empty())
        throw ConfigError("wscc dataset needs at least one network phase");
    for (std::size_t i = 0; i < data.phases.size(); ++i) {
        if (!(data.phases[i].t_end > data.phases[i].t_start))
            throw ConfigError("network phase times must increase");
        if (i > 0 && std::abs(data.phases[i].t_start -
                              data.phases[i - 1].t_end) > 1e-12)
            throw ConfigError("network phases must tile the time domain");
    }

    // Pre-fault equilibrium gate: the shipped matrix must reproduce the
    // machine table's operating point.
    std::array<double, 3> deltas{};
    for (int i = 0; i < 3; ++i)
        deltas[i] = data.machines[i].delta_init;
    const AlgebraicSolution sol =
        wscc_algebraic(deltas, data.machines, data.phases.front().y);
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        worst = std::max(worst, std::abs(data.machines[i].pm - sol.pe[i]));
    if (worst >= kEquilibriumGatePu) {
        std::ostringstream msg;
        msg << "wscc dataset rejected: pre-fault admittance matrix does not "
               "reproduce the machine equilibrium (max |Pm - Pe| = "
            << worst << " pu, gate " << kEquilibriumGatePu << " pu)";
        throw ConfigError(msg.str());
    }
    return data;
}

const NetworkPhase& WsccData::phase_at(double t) const {
    if (t < phases.front().t_start || t > phases.back().t_end)
        throw std::out_of_range("time outside the simulated interval");
    // Exact switch instants belong to the later phase.
    for (auto it = phases.rbegin(); it != phases.rend(); ++it)
        if (t >= it->t_start)
            return *it;
    return phases.front();
}

AlgebraicSolution wscc_algebraic(std::span<const double> deltas,
                                 std::span<const MachineParams> machines,
                                 const YMatrix& y) {
    if (deltas.size() != 3 || machines.size() != 3)
        throw std::invalid_argument("wscc algebraic solve expects 3 machines");
    AlgebraicSolution sol;
    for (int i = 0; i < 3; ++i)
        sol.e_prime[i] =
            machines[i].eq_prime *
            cplx(std::cos(deltas[i]), std::sin(deltas[i]));
    for (int i = 0; i < 3; ++i) {
        cplx acc(0);
        for (int k = 0; k < 3; ++k)
            acc += y[i][k] * sol.e_prime[k];
        sol.current[i] = acc;
    }
    for (int i = 0; i < 3; ++i) {
        const cplx zs(machines[i].ra, machines[i].xd_prime);
        sol.terminal[i] = sol.e_prime[i] - zs * sol.current[i];
        sol.pe[i] = sol.terminal[i].real() * sol.current[i].real() +
                    sol.terminal[i].imag() * sol.current[i].imag();
    }
    return sol;
}

std::array<std::array<double, 3>, 3>
wscc_pe_jacobian(std::span<const double> deltas,
                 std::span<const MachineParams> machines, const YMatrix& y) {
    const AlgebraicSolution sol = wscc_algebraic(deltas, machines, y);
    std::array<std::array<double, 3>, 3> jac{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // Pe_i = Re(E_i conj I_i) - Ra_i |I_i|^2
            const cplx yij_ej = y[i][j] * sol.e_prime[j];
            double v = std::imag(sol.e_prime[i] * std::conj(yij_ej));
            if (i == j)
                v -= std::imag(sol.e_prime[i] * std::conj(sol.current[i]));
            v += 2 * machines[i].ra *
                 std::imag(std::conj(sol.current[i]) * yij_ej);
            jac[i][j] = v;
        }
    }
    return jac;
}

WsccSystem::WsccSystem(WsccData data) : data_(std::move(data)) {}

int WsccSystem::var_order(int var) const {
    if (var < 0 || var >= 6)
        throw std::out_of_range("wscc variable index");
    return 1;
}

std::vector<std::string> WsccSystem::var_names() const {
    return {"delta1", "delta2", "delta3", "domega1", "domega2", "domega3"};
}

void WsccSystem::residuals(double t, std::span<const double> f,
                           std::span<const double> fp,
                           std::span<const double> /*fpp*/,
                           std::span<double> out) const {
    const NetworkPhase& phase = data_.phase_at(t);
    const std::array<double, 3> deltas{f[0], f[1], f[2]};
    const AlgebraicSolution sol =
        wscc_algebraic(deltas, data_.machines, phase.y);
    for (int i = 0; i < 3; ++i) {
        const MachineParams& m = data_.machines[i];
        out[i] = fp[i] - data_.omega_s * f[3 + i];
        out[3 + i] =
            fp[3 + i] - (m.pm - sol.pe[i] - m.d * f[3 + i]) / (2 * m.h);
    }
}

void WsccSystem::residual_partials(double t, std::span<const double> f,
                                   std::span<const double> /*fp*/,
                                   std::span<const double> /*fpp*/,
                                   ResidualPartials& out) const {
    const NetworkPhase& phase = data_.phase_at(t);
    const std::array<double, 3> deltas{f[0], f[1], f[2]};
    const auto dpe = wscc_pe_jacobian(deltas, data_.machines, phase.y);
    for (auto& row : out.df) std::fill(row.begin(), row.end(), 0.0);
    for (auto& row : out.dfp) std::fill(row.begin(), row.end(), 0.0);
    for (auto& row : out.dfpp) std::fill(row.begin(), row.end(), 0.0);
    for (int i = 0; i < 3; ++i) {
        const MachineParams& m = data_.machines[i];
        out.dfp[i][i] = 1.0;
        out.df[i][3 + i] = -data_.omega_s;
        out.dfp[3 + i][3 + i] = 1.0;
        out.df[3 + i][3 + i] = m.d / (2 * m.h);
        for (int j = 0; j < 3; ++j)
            out.df[3 + i][j] = dpe[i][j] / (2 * m.h);
    }
}

std::vector<BoundaryCondition> WsccSystem::initial_conditions() const {
    std::vector<BoundaryCondition> bcs;
    const double t0 = data_.phases.front().t_start;
    for (int i = 0; i < 3; ++i)
        bcs.push_back({i, 0, t0, data_.machines[i].delta_init});
    for (int i = 0; i < 3; ++i)
        bcs.push_back({3 + i, 0, t0, data_.machines[i].domega_init});
    return bcs;
}

std::vector<OutputVar> WsccSystem::output_vars() const {
    std::vector<OutputVar> out;
    const auto names = var_names();
    for (int v = 0; v < 6; ++v)
        out.push_back({names[v], v, 0});
    return out;
}

std::vector<double> WsccSystem::ode_initial_state() const {
    std::vector<double> y(6);
    for (int i = 0; i < 3; ++i) {
        y[i] = data_.machines[i].delta_init;
        y[3 + i] = data_.machines[i].domega_init;
    }
    return y;
}

void WsccSystem::ode_rhs(double t, std::span<const double> y,
                         std::span<double> dydt) const {
    const NetworkPhase& phase = data_.phase_at(t);
    const std::array<double, 3> deltas{y[0], y[1], y[2]};
    const AlgebraicSolution sol =
        wscc_algebraic(deltas, data_.machines, phase.y);
    for (int i = 0; i < 3; ++i) {
        const MachineParams& m = data_.machines[i];
        dydt[i] = data_.omega_s * y[3 + i];
        dydt[3 + i] = (m.pm - sol.pe[i] - m.d * y[3 + i]) / (2 * m.h);
    }
}

void WsccSystem::ode_point(double t, std::span<const double> y,
                           std::span<double> f, std::span<double> fp,
                           std::span<double> fpp) const {
    std::array<double, 6> rhs{};
    ode_rhs(t, y, rhs);
    for (int v = 0; v < 6; ++v) {
        f[v] = y[v];
        fp[v] = rhs[v];
        fpp[v] = 0.0;
    }
}

std::vector<TimeSegment> WsccSystem::time_segments(double t0, double t1) const {
    std::vector<TimeSegment> segs;
    for (const NetworkPhase& p : data_.phases) {
        const double lo = std::max(t0, p.t_start);
        const double hi = std::min(t1, p.t_end);
        if (hi - lo > 1e-12)
            segs.push_back({lo, hi, p.label == PhaseLabel::FaultOn});
    }
    if (segs.empty())
        throw std::out_of_range("requested interval outside the time domain");
    return segs;
}

std::pair<double, double> WsccSystem::time_domain() const {
    return {data_.phases.front().t_start, data_.phases.back().t_end};
}

} // namespace qdae::power
