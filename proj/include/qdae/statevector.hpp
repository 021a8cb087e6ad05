#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qdae::quantum {

using cplx = std::complex<double>;

/// 2x2 complex matrix [[a, b], [c, d]].
struct Mat2 {
    cplx a{}, b{}, c{}, d{};
};

/// Rotation about Y: [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
Mat2 rot_y(double angle);
/// Rotation about Z: diag(exp(-i t/2), exp(i t/2)).
Mat2 rot_z(double angle);
Mat2 hadamard();

/// First derivatives with respect to the angle. Second derivatives are
/// -U/4 for both rotations and are not materialized separately.
Mat2 rot_y_dangle(double angle);
Mat2 rot_z_dangle(double angle);

/// Normalized state of a small qubit register. Qubit 0 is the most
/// significant bit of the amplitude index (left factor of tensor products).
struct StateVector {
    int num_qubits = 0;
    std::vector<cplx> amplitudes;

    static StateVector zero_state(int num_qubits);

    std::size_t dim() const { return amplitudes.size(); }
    double norm_squared() const;
};

/// In-place single-qubit unitary on the full register.
void apply_single_qubit(std::span<cplx> amplitudes, int num_qubits, int qubit,
                        const Mat2& u);

/// In-place controlled-NOT.
void apply_cnot(std::span<cplx> amplitudes, int num_qubits, int control,
                int target);

/// P(qubit = 0) - P(qubit = 1). Throws std::out_of_range for a bad index.
double expectation_z(const StateVector& state, int qubit);

namespace detail {
void check_qubit(int num_qubits, int qubit);
}

} // namespace qdae::quantum
