#include "qdae/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qdae::quantum {

Mat2 rot_y(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return {cplx(c), cplx(-s), cplx(s), cplx(c)};
}

Mat2 rot_y_dangle(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return {cplx(-s / 2), cplx(-c / 2), cplx(c / 2), cplx(-s / 2)};
}

Mat2 rot_z(double angle) {
    return {std::polar(1.0, -angle / 2), cplx(0), cplx(0),
            std::polar(1.0, angle / 2)};
}

Mat2 rot_z_dangle(double angle) {
    const cplx i(0, 1);
    return {-0.5 * i * std::polar(1.0, -angle / 2), cplx(0), cplx(0),
            0.5 * i * std::polar(1.0, angle / 2)};
}

Mat2 hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return {cplx(r), cplx(r), cplx(r), cplx(-r)};
}

StateVector StateVector::zero_state(int num_qubits) {
    if (num_qubits < 1)
        throw std::invalid_argument("state vector needs at least one qubit");
    StateVector s;
    s.num_qubits = num_qubits;
    s.amplitudes.assign(std::size_t{1} << num_qubits, cplx(0));
    s.amplitudes[0] = cplx(1);
    return s;
}

double StateVector::norm_squared() const {
    double n = 0;
    for (const cplx& a : amplitudes)
        n += std::norm(a);
    return n;
}

namespace detail {
void check_qubit(int num_qubits, int qubit) {
    if (qubit < 0 || qubit >= num_qubits)
        throw std::out_of_range("qubit index out of range");
}
} // namespace detail

void apply_single_qubit(std::span<cplx> amplitudes, int num_qubits, int qubit,
                        const Mat2& u) {
    detail::check_qubit(num_qubits, qubit);
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t stride = std::size_t{1} << (num_qubits - 1 - qubit);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const cplx lo = amplitudes[i];
            const cplx hi = amplitudes[i + stride];
            amplitudes[i] = u.a * lo + u.b * hi;
            amplitudes[i + stride] = u.c * lo + u.d * hi;
        }
    }
}

void apply_cnot(std::span<cplx> amplitudes, int num_qubits, int control,
                int target) {
    detail::check_qubit(num_qubits, control);
    detail::check_qubit(num_qubits, target);
    if (control == target)
        throw std::invalid_argument("cnot control equals target");
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t cbit = std::size_t{1} << (num_qubits - 1 - control);
    const std::size_t tbit = std::size_t{1} << (num_qubits - 1 - target);
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cbit) && !(i & tbit))
            std::swap(amplitudes[i], amplitudes[i | tbit]);
    }
}

double expectation_z(const StateVector& state, int qubit) {
    detail::check_qubit(state.num_qubits, qubit);
    const std::size_t bit = std::size_t{1} << (state.num_qubits - 1 - qubit);
    double e = 0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        e += (i & bit) ? -p : p;
    }
    return e;
}

} // namespace qdae::quantum
