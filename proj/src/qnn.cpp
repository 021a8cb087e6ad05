#include "qdae/qnn.hpp"

#include <cmath>
#include <stdexcept>

namespace qdae::qnn {

using quantum::AngleSource;
using quantum::GateKind;
using quantum::GateOp;
using quantum::InputMap;

SfqModel SfqModel::make(SfqEmbedding embedding, int num_layers) {
    if (num_layers < 1)
        throw std::invalid_argument("sfq needs at least one layer");
    SfqModel m;
    m.embedding = embedding;
    m.num_layers = num_layers;
    m.theta.assign(2 * static_cast<std::size_t>(num_layers), 0.0);
    return m;
}

PfqModel PfqModel::make(int num_qubits) {
    if (num_qubits < 1)
        throw std::invalid_argument("pfq needs at least one qubit");
    PfqModel m;
    m.num_qubits = num_qubits;
    m.rotations = {GateKind::RotY, GateKind::RotZ, GateKind::RotY};
    m.theta.assign(3, 0.0);
    return m;
}

namespace {

void validate(const SfqModel& m) {
    if (m.num_layers < 1)
        throw std::invalid_argument("sfq needs at least one layer");
    if (m.theta.size() != static_cast<std::size_t>(2 * m.num_layers))
        throw std::invalid_argument("sfq theta must have 2 x layers entries");
}

void validate(const PfqModel& m) {
    if (m.num_qubits < 1)
        throw std::invalid_argument("pfq needs at least one qubit");
    if (m.theta.size() != m.rotations.size())
        throw std::invalid_argument(
            "pfq theta length must match the rotation sequence");
    for (GateKind k : m.rotations)
        if (k != GateKind::RotY && k != GateKind::RotZ)
            throw std::invalid_argument("pfq rotations must be RotY or RotZ");
}

} // namespace

std::vector<GateOp> sfq_build_circuit(const SfqModel& model, double x) {
    validate(model);
    std::vector<GateOp> ops;
    if (model.embedding == SfqEmbedding::Arcsin) {
        if (std::abs(x) >= 1)
            throw ArcsinDomainError(
                "arcsin embedding requires |x| < 1, got x = " +
                std::to_string(x));
        ops.push_back(GateOp::ry(0, AngleSource::input(InputMap::Arcsin)));
        ops.push_back(GateOp::ry(1, AngleSource::input(InputMap::TwoPiLinear)));
    } else {
        ops.push_back(GateOp::ry(1, AngleSource::input(InputMap::Identity)));
    }
    const int L = model.num_layers;
    for (int layer = 0; layer < L; ++layer) {
        ops.push_back(GateOp::h(0));
        ops.push_back(GateOp::ry(0, AngleSource::param(0 * L + layer)));
        ops.push_back(GateOp::ry(1, AngleSource::param(1 * L + layer)));
        ops.push_back(GateOp::cnot(0, 1));
    }
    ops.push_back(GateOp::h(0));
    return ops;
}

std::vector<GateOp> pfq_build_circuit(const PfqModel& model, double x) {
    validate(model);
    if (!std::isfinite(x))
        throw std::invalid_argument("pfq input must be finite");
    std::vector<GateOp> ops;
    ops.push_back(GateOp::amplitude_prep_monomials());
    for (std::size_t k = 0; k < model.rotations.size(); ++k) {
        const AngleSource src = AngleSource::param(static_cast<int>(k));
        ops.push_back(model.rotations[k] == GateKind::RotY ? GateOp::ry(0, src)
                                                           : GateOp::rz(0, src));
    }
    return ops;
}

namespace {

quantum::ZExpectation measure(const std::vector<GateOp>& ops, double x,
                              std::span<const double> theta, int num_qubits) {
    const quantum::TangentBundle bundle = quantum::run_circuit(
        ops, x, theta, num_qubits, static_cast<int>(theta.size()));
    return quantum::expectation_z_with_tangents(bundle, 0);
}

} // namespace

ModelOutput evaluate(const SfqModel& model, double x) {
    const auto ops = sfq_build_circuit(model, x);
    const quantum::ZExpectation z = measure(ops, x, model.theta, 2);

    const double t1 = model.tau[1], t2 = model.tau[2];
    const double g1 = t1 + 2 * t2 * z.value; // dg/dz
    const double g2 = 2 * t2;                // d2g/dz2

    ModelOutput out;
    out.f = model.tau[0] + t1 * z.value + t2 * z.value * z.value;
    out.df_dx = g1 * z.d_dx;
    out.d2f_dx2 = g1 * z.d2_dx2 + g2 * z.d_dx * z.d_dx;

    const std::size_t np = model.theta.size();
    out.grad_quantum.resize(np);
    out.dfdx_grad_quantum.resize(np);
    out.d2fdx2_grad_quantum.resize(np);
    for (std::size_t k = 0; k < np; ++k) {
        out.grad_quantum[k] = g1 * z.d_dtheta[k];
        out.dfdx_grad_quantum[k] =
            g2 * z.d_dtheta[k] * z.d_dx + g1 * z.d_dtheta_dx[k];
        out.d2fdx2_grad_quantum[k] = g2 * z.d_dtheta[k] * z.d2_dx2 +
                                     g1 * z.d_dtheta_dx2[k] +
                                     2 * g2 * z.d_dx * z.d_dtheta_dx[k];
    }
    out.grad_classical = {1.0, z.value, z.value * z.value};
    out.dfdx_grad_classical = {0.0, z.d_dx, 2 * z.value * z.d_dx};
    out.d2fdx2_grad_classical = {
        0.0, z.d2_dx2, 2 * (z.d_dx * z.d_dx + z.value * z.d2_dx2)};
    return out;
}

ModelOutput evaluate(const PfqModel& model, double x) {
    const auto ops = pfq_build_circuit(model, x);
    const quantum::ZExpectation z =
        measure(ops, x, model.theta, model.num_qubits);

    const double scale = model.tau[0];
    ModelOutput out;
    out.f = scale * z.value + model.tau[1];
    out.df_dx = scale * z.d_dx;
    out.d2f_dx2 = scale * z.d2_dx2;

    const std::size_t np = model.theta.size();
    out.grad_quantum.resize(np);
    out.dfdx_grad_quantum.resize(np);
    out.d2fdx2_grad_quantum.resize(np);
    for (std::size_t k = 0; k < np; ++k) {
        out.grad_quantum[k] = scale * z.d_dtheta[k];
        out.dfdx_grad_quantum[k] = scale * z.d_dtheta_dx[k];
        out.d2fdx2_grad_quantum[k] = scale * z.d_dtheta_dx2[k];
    }
    out.grad_classical = {z.value, 1.0};
    out.dfdx_grad_classical = {z.d_dx, 0.0};
    out.d2fdx2_grad_classical = {z.d2_dx2, 0.0};
    return out;
}

ModelOutput evaluate(const QnnModel& model, double x) {
    return std::visit([x](const auto& m) { return evaluate(m, x); }, model);
}

} // namespace qdae::qnn
