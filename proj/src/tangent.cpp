#include "qdae/tangent.hpp"

#include <cmath>
#include <stdexcept>

namespace qdae::quantum {

namespace {

struct ResolvedAngle {
    double value = 0;   // a(x) or theta_k or literal
    double d1 = 0;      // da/dx
    double d2 = 0;      // d2a/dx2
    int param = -1;     // owning parameter index, if any
};

ResolvedAngle resolve_angle(const AngleSource& src, double x,
                            std::span<const double> theta) {
    switch (src.kind) {
    case AngleSource::Kind::Literal:
        return {src.literal, 0, 0, -1};
    case AngleSource::Kind::Parameter:
        if (src.parameter < 0 ||
            src.parameter >= static_cast<int>(theta.size()))
            throw std::out_of_range("angle parameter index outside theta");
        return {theta[src.parameter], 0, 0, src.parameter};
    case AngleSource::Kind::Input:
        switch (src.map) {
        case InputMap::Identity:
            return {x, 1, 0, -1};
        case InputMap::Arcsin: {
            if (std::abs(x) >= 1)
                throw std::domain_error("arcsin input outside (-1, 1)");
            const double w = 1 - x * x;
            return {std::asin(x), 1 / std::sqrt(w), x / (w * std::sqrt(w)),
                    -1};
        }
        case InputMap::TwoPiLinear: {
            const double two_pi = 2 * std::acos(-1.0);
            return {two_pi * x, two_pi, 0, -1};
        }
        }
        break;
    case AngleSource::Kind::None:
        break;
    }
    throw std::invalid_argument("rotation gate without an angle source");
}

Mat2 scale(const Mat2& m, double s) {
    return {m.a * s, m.b * s, m.c * s, m.d * s};
}

Mat2 add(const Mat2& m, const Mat2& n) {
    return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
}

// In-place chain-rule update of a (w, w_x, w_xx) triple under a gate whose
// matrix depends on x:  w_xx <- U w_xx + 2 U' w_x + U'' w, and so on.
void chain_apply(std::span<cplx> w, std::span<cplx> wx, std::span<cplx> wxx,
                 int num_qubits, int qubit, const Mat2& u, const Mat2& u1,
                 const Mat2& u2) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t stride = std::size_t{1} << (num_qubits - 1 - qubit);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const std::size_t j = i + stride;
            const cplx w0 = w[i], w1 = w[j];
            const cplx x0 = wx[i], x1 = wx[j];
            const cplx y0 = wxx[i], y1 = wxx[j];
            wxx[i] = u.a * y0 + u.b * y1 + 2.0 * (u1.a * x0 + u1.b * x1) +
                     u2.a * w0 + u2.b * w1;
            wxx[j] = u.c * y0 + u.d * y1 + 2.0 * (u1.c * x0 + u1.d * x1) +
                     u2.c * w0 + u2.d * w1;
            wx[i] = u.a * x0 + u.b * x1 + u1.a * w0 + u1.b * w1;
            wx[j] = u.c * x0 + u.d * x1 + u1.c * w0 + u1.d * w1;
            w[i] = u.a * w0 + u.b * w1;
            w[j] = u.c * w0 + u.d * w1;
        }
    }
}

// dst <- U dst + B src, pairwise on one qubit.
void apply_plus(std::span<cplx> dst, std::span<const cplx> src, int num_qubits,
                int qubit, const Mat2& u, const Mat2& b) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t stride = std::size_t{1} << (num_qubits - 1 - qubit);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const std::size_t j = i + stride;
            const cplx d0 = dst[i], d1 = dst[j];
            const cplx s0 = src[i], s1 = src[j];
            dst[i] = u.a * d0 + u.b * d1 + b.a * s0 + b.b * s1;
            dst[j] = u.c * d0 + u.d * d1 + b.c * s0 + b.d * s1;
        }
    }
}

void encode_monomials(std::span<const double> coeff,
                      std::span<const double> dcoeff,
                      std::span<const double> d2coeff, TangentBundle& b) {
    const std::size_t dim = coeff.size();
    double n2 = 0, n2p = 0, n2pp = 0;
    for (std::size_t k = 0; k < dim; ++k) {
        n2 += coeff[k] * coeff[k];
        n2p += 2 * coeff[k] * dcoeff[k];
        n2pp += 2 * (dcoeff[k] * dcoeff[k] + coeff[k] * d2coeff[k]);
    }
    const double nrm = std::sqrt(n2);
    const double np = n2p / (2 * nrm);
    const double npp = (n2pp * 2 * nrm - n2p * 2 * np) / (4 * n2);
    for (std::size_t k = 0; k < dim; ++k) {
        b.value.amplitudes[k] = coeff[k] / nrm;
        b.d_dx[k] = (dcoeff[k] * nrm - coeff[k] * np) / n2;
        b.d2_dx2[k] = d2coeff[k] / nrm -
                      (2 * dcoeff[k] * np + coeff[k] * npp) / n2 +
                      2.0 * coeff[k] * np * np / (nrm * n2);
    }
}

} // namespace

TangentBundle TangentBundle::zero_state(int num_qubits, int num_params) {
    TangentBundle b;
    b.value = StateVector::zero_state(num_qubits);
    b.d_dx.assign(b.value.dim(), cplx(0));
    b.d2_dx2.assign(b.value.dim(), cplx(0));
    b.d_dtheta.resize(num_params);
    for (ParamTangents& t : b.d_dtheta) {
        t.d.assign(b.value.dim(), cplx(0));
        t.d_dx.assign(b.value.dim(), cplx(0));
        t.d_dx2.assign(b.value.dim(), cplx(0));
    }
    return b;
}

TangentBundle amplitude_encode(double x, int num_qubits) {
    if (!std::isfinite(x))
        throw std::invalid_argument("amplitude encoding requires finite input");
    TangentBundle b = TangentBundle::zero_state(num_qubits, 0);
    const std::size_t dim = b.value.dim();
    std::vector<double> c(dim), cp(dim), cpp(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        c[k] = std::pow(x, static_cast<double>(k));
        cp[k] = k == 0 ? 0.0 : k * std::pow(x, static_cast<double>(k - 1));
        cpp[k] = k < 2 ? 0.0
                       : static_cast<double>(k) * (k - 1) *
                             std::pow(x, static_cast<double>(k - 2));
    }
    encode_monomials(c, cp, cpp, b);
    return b;
}

TangentBundle apply_gate(TangentBundle bundle, const GateOp& gate, double x,
                         std::span<const double> theta) {
    const int n = bundle.value.num_qubits;
    auto& v = bundle.value.amplitudes;

    switch (gate.kind) {
    case GateKind::Hadamard: {
        const Mat2 u = hadamard();
        detail::check_qubit(n, gate.target);
        apply_single_qubit(v, n, gate.target, u);
        apply_single_qubit(bundle.d_dx, n, gate.target, u);
        apply_single_qubit(bundle.d2_dx2, n, gate.target, u);
        for (ParamTangents& t : bundle.d_dtheta) {
            apply_single_qubit(t.d, n, gate.target, u);
            apply_single_qubit(t.d_dx, n, gate.target, u);
            apply_single_qubit(t.d_dx2, n, gate.target, u);
        }
        return bundle;
    }
    case GateKind::ControlledNot: {
        apply_cnot(v, n, gate.control, gate.target);
        apply_cnot(bundle.d_dx, n, gate.control, gate.target);
        apply_cnot(bundle.d2_dx2, n, gate.control, gate.target);
        for (ParamTangents& t : bundle.d_dtheta) {
            apply_cnot(t.d, n, gate.control, gate.target);
            apply_cnot(t.d_dx, n, gate.control, gate.target);
            apply_cnot(t.d_dx2, n, gate.control, gate.target);
        }
        return bundle;
    }
    case GateKind::RotY:
    case GateKind::RotZ: {
        detail::check_qubit(n, gate.target);
        const ResolvedAngle a = resolve_angle(gate.angle, x, theta);
        const bool is_y = gate.kind == GateKind::RotY;
        const Mat2 u = is_y ? rot_y(a.value) : rot_z(a.value);
        const Mat2 ua = is_y ? rot_y_dangle(a.value) : rot_z_dangle(a.value);

        if (gate.angle.kind == AngleSource::Kind::Input) {
            // dU/dx = a' dU/da, d2U/dx2 = a'' dU/da + a'^2 d2U/da2,
            // with d2U/da2 = -U/4 for both rotations.
            const Mat2 u1 = scale(ua, a.d1);
            const Mat2 u2 = add(scale(ua, a.d2), scale(u, -0.25 * a.d1 * a.d1));
            chain_apply(v, bundle.d_dx, bundle.d2_dx2, n, gate.target, u, u1,
                        u2);
            for (ParamTangents& t : bundle.d_dtheta)
                chain_apply(t.d, t.d_dx, t.d_dx2, n, gate.target, u, u1, u2);
            return bundle;
        }

        // Constant or parameter angle: matrix independent of x.
        if (a.param >= 0 && a.param < static_cast<int>(bundle.d_dtheta.size())) {
            ParamTangents& own = bundle.d_dtheta[a.param];
            apply_plus(own.d, v, n, gate.target, u, ua);
            apply_plus(own.d_dx, bundle.d_dx, n, gate.target, u, ua);
            apply_plus(own.d_dx2, bundle.d2_dx2, n, gate.target, u, ua);
        }
        for (std::size_t k = 0; k < bundle.d_dtheta.size(); ++k) {
            if (static_cast<int>(k) == a.param)
                continue;
            ParamTangents& t = bundle.d_dtheta[k];
            apply_single_qubit(t.d, n, gate.target, u);
            apply_single_qubit(t.d_dx, n, gate.target, u);
            apply_single_qubit(t.d_dx2, n, gate.target, u);
        }
        apply_single_qubit(v, n, gate.target, u);
        apply_single_qubit(bundle.d_dx, n, gate.target, u);
        apply_single_qubit(bundle.d2_dx2, n, gate.target, u);
        return bundle;
    }
    case GateKind::AmplitudePrep: {
        const std::size_t dim = bundle.value.dim();
        if (gate.prep_monomials) {
            TangentBundle enc = amplitude_encode(x, n);
            bundle.value = std::move(enc.value);
            bundle.d_dx = std::move(enc.d_dx);
            bundle.d2_dx2 = std::move(enc.d2_dx2);
        } else {
            if (gate.prep_coefficients.size() != dim)
                throw std::invalid_argument(
                    "amplitude preparation coefficient count != 2^n");
            std::vector<double> zero(dim, 0.0);
            encode_monomials(gate.prep_coefficients, zero, zero, bundle);
        }
        for (ParamTangents& t : bundle.d_dtheta) {
            t.d.assign(dim, cplx(0));
            t.d_dx.assign(dim, cplx(0));
            t.d_dx2.assign(dim, cplx(0));
        }
        return bundle;
    }
    }
    throw std::invalid_argument("unknown gate kind");
}

TangentBundle run_circuit(std::span<const GateOp> circuit, double x,
                          std::span<const double> theta, int num_qubits,
                          int num_params) {
    TangentBundle b = TangentBundle::zero_state(num_qubits, num_params);
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        if (circuit[i].kind == GateKind::AmplitudePrep && i != 0)
            throw std::invalid_argument(
                "amplitude preparation must be the first operation");
        b = apply_gate(std::move(b), circuit[i], x, theta);
    }
    return b;
}

ZExpectation expectation_z_with_tangents(const TangentBundle& bundle,
                                         int qubit) {
    const int n = bundle.value.num_qubits;
    detail::check_qubit(n, qubit);
    const std::size_t bit = std::size_t{1} << (n - 1 - qubit);
    const std::size_t dim = bundle.value.dim();

    // <a|Z|b> over the measured qubit.
    auto zdot = [&](std::span<const cplx> a, std::span<const cplx> b) {
        cplx acc(0);
        for (std::size_t i = 0; i < dim; ++i) {
            const cplx term = std::conj(a[i]) * b[i];
            acc += (i & bit) ? -term : term;
        }
        return acc;
    };

    const auto& v = bundle.value.amplitudes;
    ZExpectation out;
    out.value = zdot(v, v).real();
    out.d_dx = 2 * zdot(bundle.d_dx, v).real();
    out.d2_dx2 =
        2 * zdot(bundle.d2_dx2, v).real() + 2 * zdot(bundle.d_dx, bundle.d_dx).real();

    const std::size_t np = bundle.d_dtheta.size();
    out.d_dtheta.resize(np);
    out.d_dtheta_dx.resize(np);
    out.d_dtheta_dx2.resize(np);
    for (std::size_t k = 0; k < np; ++k) {
        const ParamTangents& t = bundle.d_dtheta[k];
        out.d_dtheta[k] = 2 * zdot(t.d, v).real();
        out.d_dtheta_dx[k] =
            2 * zdot(t.d_dx, v).real() + 2 * zdot(t.d, bundle.d_dx).real();
        out.d_dtheta_dx2[k] = 2 * zdot(t.d_dx2, v).real() +
                              2 * zdot(t.d, bundle.d2_dx2).real() +
                              4 * zdot(t.d_dx, bundle.d_dx).real();
    }
    return out;
}

} // namespace qdae::quantum
