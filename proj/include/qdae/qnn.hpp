#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "qdae/errors.hpp"
#include "qdae/gates.hpp"
#include "qdae/tangent.hpp"

namespace qdae::qnn {

enum class SfqEmbedding { Ry, Arcsin };

/// Two-qubit layered circuit. theta is laid out [qubit][layer] row-major,
/// so theta[i * num_layers + j] is the angle on qubit i in layer j.
struct SfqModel {
    SfqEmbedding embedding = SfqEmbedding::Ry;
    int num_layers = 2;
    std::vector<double> theta;
    std::array<double, 3> tau{0.0, 1.0, 0.0}; // f = tau0 + tau1 z + tau2 z^2

    static SfqModel make(SfqEmbedding embedding, int num_layers = 2);
    int num_quantum_params() const { return 2 * num_layers; }
};

/// Single-register circuit over the amplitude-encoded monomial state, with a
/// rotation sequence on qubit 0. tau = {scale, offset}: f = tau3 z + tau4.
struct PfqModel {
    int num_qubits = 1;
    std::vector<quantum::GateKind> rotations; // RotY / RotZ only
    std::vector<double> theta;                // one angle per rotation
    std::array<double, 2> tau{1.0, 0.0};
    bool scale_trainable = true;

    static PfqModel make(int num_qubits = 1); // RotY, RotZ, RotY default
    int num_quantum_params() const { return static_cast<int>(rotations.size()); }
};

/// Surrogate value with input derivatives and parameter gradients. The
/// *_grad_* vectors carry the parameter derivatives of f, f', and f''; the
/// classical gradients cover every tau slot regardless of trainability.
struct ModelOutput {
    double f = 0;
    double df_dx = 0;
    double d2f_dx2 = 0;
    std::vector<double> grad_quantum;
    std::vector<double> dfdx_grad_quantum;
    std::vector<double> d2fdx2_grad_quantum;
    std::vector<double> grad_classical;
    std::vector<double> dfdx_grad_classical;
    std::vector<double> d2fdx2_grad_classical;
};

/// Gate list for one evaluation point. Throws ArcsinDomainError when the
/// arcsin embedding is asked for |x| >= 1.
std::vector<quantum::GateOp> sfq_build_circuit(const SfqModel& model, double x);
std::vector<quantum::GateOp> pfq_build_circuit(const PfqModel& model, double x);

ModelOutput evaluate(const SfqModel& model, double x);
ModelOutput evaluate(const PfqModel& model, double x);

using QnnModel = std::variant<SfqModel, PfqModel>;
ModelOutput evaluate(const QnnModel& model, double x);

} // namespace qdae::qnn
