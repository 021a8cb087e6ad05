#include "qdae/smib.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "qdae/errors.hpp"

namespace qdae::power {

void SmibParams::validate() const {
    if (!(k2 > 0))
        throw ConfigError("smib: k2 must be positive");
    for (double v : {k1, k2, k3, delta0, domega0})
        if (!std::isfinite(v))
            throw ConfigError("smib: parameters must be finite");
}

SmibParams SmibParams::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open system file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("failed to parse " + path.string() + ": " + e.what());
    }
    SmibParams p;
    try {
        p.k1 = j.at("k1").get<double>();
        p.k2 = j.at("k2").get<double>();
        p.k3 = j.at("k3").get<double>();
        p.delta0 = j.at("delta0").get<double>();
        p.domega0 = j.at("domega0").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("smib system file " + path.string() +
                          " is missing a key: " + e.what());
    }
    p.validate();
    return p;
}

double smib_residual(const SmibParams& p, double /*t*/, double delta,
                     double ddelta, double d2delta) {
    return d2delta - (p.k1 - p.k2 * std::sin(delta) - p.k3 * ddelta);
}

SmibSystem::SmibSystem(SmibParams params) : params_(params) {
    params_.validate();
}

int SmibSystem::var_order(int var) const {
    if (var != 0)
        throw std::out_of_range("smib has a single state variable");
    return 2;
}

void SmibSystem::residuals(double t, std::span<const double> f,
                           std::span<const double> fp,
                           std::span<const double> fpp,
                           std::span<double> out) const {
    out[0] = smib_residual(params_, t, f[0], fp[0], fpp[0]);
}

void SmibSystem::residual_partials(double /*t*/, std::span<const double> f,
                                   std::span<const double> /*fp*/,
                                   std::span<const double> /*fpp*/,
                                   ResidualPartials& out) const {
    out.df[0][0] = params_.k2 * std::cos(f[0]);
    out.dfp[0][0] = params_.k3;
    out.dfpp[0][0] = 1.0;
}

std::vector<BoundaryCondition> SmibSystem::initial_conditions() const {
    return {{0, 0, 0.0, params_.delta0}, {0, 1, 0.0, params_.domega0}};
}

std::vector<OutputVar> SmibSystem::output_vars() const {
    return {{"delta", 0, 0}, {"domega", 0, 1}};
}

std::vector<double> SmibSystem::ode_initial_state() const {
    return {params_.delta0, params_.domega0};
}

void SmibSystem::ode_rhs(double /*t*/, std::span<const double> y,
                         std::span<double> dydt) const {
    dydt[0] = y[1];
    dydt[1] = params_.k1 - params_.k2 * std::sin(y[0]) - params_.k3 * y[1];
}

void SmibSystem::ode_point(double t, std::span<const double> y,
                           std::span<double> f, std::span<double> fp,
                           std::span<double> fpp) const {
    f[0] = y[0];
    fp[0] = y[1];
    double rhs[2];
    ode_rhs(t, y, rhs);
    fpp[0] = rhs[1];
}

} // namespace qdae::power
