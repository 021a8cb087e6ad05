#pragma once

#include <span>
#include <vector>

#include "qdae/gates.hpp"
#include "qdae/statevector.hpp"

namespace qdae::quantum {

/// Forward tangents of the state with respect to one trainable parameter:
/// d|psi>/dp together with its first and second input derivatives, which are
/// needed because the loss differentiates f'(x) and f''(x) by the parameters.
struct ParamTangents {
    std::vector<cplx> d;       // d psi / d theta_k
    std::vector<cplx> d_dx;    // d^2 psi / dx dtheta_k
    std::vector<cplx> d_dx2;   // d^3 psi / dx^2 dtheta_k
};

/// State plus all propagated tangents. Value semantics; gate application
/// returns a new bundle.
struct TangentBundle {
    StateVector value;
    std::vector<cplx> d_dx;
    std::vector<cplx> d2_dx2;
    std::vector<ParamTangents> d_dtheta;

    static TangentBundle zero_state(int num_qubits, int num_params);
};

/// Applies one gate, propagating value and every tangent by the product
/// rule. `x` is the circuit input, `theta` the trainable parameter vector
/// referenced by Parameter angle sources.
TangentBundle apply_gate(TangentBundle bundle, const GateOp& gate, double x,
                         std::span<const double> theta);

/// Prepares the normalized monomial state [1, x, ..., x^(2^n - 1)] with
/// exact first and second input derivatives.
TangentBundle amplitude_encode(double x, int num_qubits);

/// Runs a full circuit from |0...0>. AmplitudePrep may only appear first.
TangentBundle run_circuit(std::span<const GateOp> circuit, double x,
                          std::span<const double> theta, int num_qubits,
                          int num_params);

/// <Z> on one qubit together with every propagated derivative.
struct ZExpectation {
    double value = 0;
    double d_dx = 0;
    double d2_dx2 = 0;
    std::vector<double> d_dtheta;
    std::vector<double> d_dtheta_dx;
    std::vector<double> d_dtheta_dx2;
};

ZExpectation expectation_z_with_tangents(const TangentBundle& bundle,
                                         int qubit);

} // namespace qdae::quantum
