#pragma once

#include <utility>
#include <vector>

namespace qdae::quantum {

enum class GateKind { RotY, RotZ, Hadamard, ControlledNot, AmplitudePrep };

/// Preprocessing applied to the circuit input before it becomes a rotation
/// angle.
enum class InputMap { Identity, Arcsin, TwoPiLinear };

/// Where a rotation gate takes its angle from: a fixed value, an entry of the
/// trainable parameter vector, or the circuit input channel.
struct AngleSource {
    enum class Kind { None, Literal, Parameter, Input };

    Kind kind = Kind::None;
    double literal = 0.0;
    int parameter = -1;
    InputMap map = InputMap::Identity;

    static AngleSource none() { return {}; }
    static AngleSource lit(double radians) {
        AngleSource s;
        s.kind = Kind::Literal;
        s.literal = radians;
        return s;
    }
    static AngleSource param(int index) {
        AngleSource s;
        s.kind = Kind::Parameter;
        s.parameter = index;
        return s;
    }
    static AngleSource input(InputMap m) {
        AngleSource s;
        s.kind = Kind::Input;
        s.map = m;
        return s;
    }
};

struct GateOp {
    GateKind kind = GateKind::Hadamard;
    int target = 0;
    int control = -1; // ControlledNot only
    AngleSource angle; // RotY / RotZ only

    // AmplitudePrep: either literal unnormalized coefficients, or the
    // monomial vector [1, x, x^2, ...] of the circuit input.
    std::vector<double> prep_coefficients;
    bool prep_monomials = false;

    static GateOp ry(int target, AngleSource s) {
        GateOp g;
        g.kind = GateKind::RotY;
        g.target = target;
        g.angle = s;
        return g;
    }
    static GateOp rz(int target, AngleSource s) {
        GateOp g;
        g.kind = GateKind::RotZ;
        g.target = target;
        g.angle = s;
        return g;
    }
    static GateOp h(int target) {
        GateOp g;
        g.kind = GateKind::Hadamard;
        g.target = target;
        return g;
    }
    static GateOp cnot(int control, int target) {
        GateOp g;
        g.kind = GateKind::ControlledNot;
        g.control = control;
        g.target = target;
        return g;
    }
    static GateOp amplitude_prep_monomials() {
        GateOp g;
        g.kind = GateKind::AmplitudePrep;
        g.prep_monomials = true;
        return g;
    }
    static GateOp amplitude_prep(std::vector<double> coefficients) {
        GateOp g;
        g.kind = GateKind::AmplitudePrep;
        g.prep_coefficients = std::move(coefficients);
        return g;
    }
};

} // namespace qdae::quantum
