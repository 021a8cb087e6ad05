#include "qdae/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qdae/errors.hpp"

namespace qdae::opt {

namespace {

constexpr double kC1 = 1e-4;
constexpr double kC2 = 0.9;
constexpr double kAlphaMax = 1e3;

double inf_norm(std::span<const double> v) {
    double m = 0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// One-dimensional view of the objective along x + alpha d.
struct LineFn {
    const Objective& objective;
    std::span<const double> x0;
    std::span<const double> dir;
    std::vector<double>& xtrial;
    std::vector<double>& gtrial;

    double operator()(double alpha, double& dphi) {
        for (std::size_t i = 0; i < x0.size(); ++i)
            xtrial[i] = x0[i] + alpha * dir[i];
        const double value = objective(xtrial, gtrial);
        dphi = dot(gtrial, dir);
        return value;
    }
};

double cubic_interp(double a, double fa, double da, double b, double fb,
                    double db) {
    // Minimizer of the cubic through (a, fa, da), (b, fb, db); falls back to
    // bisection when the cubic is degenerate.
    const double d1 = da + db - 3 * (fa - fb) / (a - b);
    const double disc = d1 * d1 - da * db;
    if (disc < 0)
        return 0.5 * (a + b);
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    double t = b - (b - a) * ((db + d2 - d1) / (db - da + 2 * d2));
    if (!std::isfinite(t))
        return 0.5 * (a + b);
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double margin = 0.1 * (hi - lo);
    return std::clamp(t, lo + margin, hi - margin);
}

/// Strong Wolfe line search (bracket then zoom). Returns alpha or 0 on
/// failure. phi0/dphi0 are the value and slope at alpha = 0.
double wolfe_search(LineFn& phi, double phi0, double dphi0, double& f_out,
                    int max_evals = 60) {
    double alpha_prev = 0, phi_prev = phi0, dphi_prev = dphi0;
    double alpha = 1.0;
    int evals = 0;

    auto zoom = [&](double lo, double flo, double dlo, double hi, double fhi,
                    double dhi) -> double {
        for (int it = 0; it < 40 && evals < max_evals; ++it) {
            const double a = cubic_interp(lo, flo, dlo, hi, fhi, dhi);
            double da = 0;
            const double fa = phi(a, da);
            ++evals;
            if (!std::isfinite(fa) || fa > phi0 + kC1 * a * dphi0 ||
                fa >= flo) {
                hi = a; fhi = fa; dhi = da;
            } else {
                if (std::abs(da) <= -kC2 * dphi0) {
                    f_out = fa;
                    return a;
                }
                if (da * (hi - lo) >= 0) {
                    hi = lo; fhi = flo; dhi = dlo;
                }
                lo = a; flo = fa; dlo = da;
            }
            if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(lo)))
                break;
        }
        // Accept the low end if it at least decreases sufficiently.
        if (flo <= phi0 + kC1 * lo * dphi0 && lo > 0) {
            double d = 0;
            f_out = phi(lo, d);
            return lo;
        }
        return 0;
    };

    while (evals < max_evals) {
        double dphi = 0;
        const double value = phi(alpha, dphi);
        ++evals;
        if (!std::isfinite(value)) {
            // Step into bad territory: shrink hard.
            alpha *= 0.25;
            if (alpha < 1e-18)
                return 0;
            continue;
        }
        if (value > phi0 + kC1 * alpha * dphi0 ||
            (evals > 1 && value >= phi_prev))
            return zoom(alpha_prev, phi_prev, dphi_prev, alpha, value, dphi);
        if (std::abs(dphi) <= -kC2 * dphi0) {
            f_out = value;
            return alpha;
        }
        if (dphi >= 0)
            return zoom(alpha, value, dphi, alpha_prev, phi_prev, dphi_prev);
        alpha_prev = alpha; phi_prev = value; dphi_prev = dphi;
        alpha = std::min(2 * alpha, kAlphaMax);
        if (alpha >= kAlphaMax)
            return zoom(alpha_prev, phi_prev, dphi_prev, alpha, value, dphi);
    }
    return 0;
}

} // namespace

BfgsResult bfgs_minimize(const Objective& objective,
                         std::span<const double> initial,
                         const BfgsOptions& options,
                         const IterationCallback& on_iteration) {
    const std::size_t n = initial.size();
    if (n == 0)
        throw std::invalid_argument("bfgs needs at least one variable");

    std::vector<double> x(initial.begin(), initial.end());
    std::vector<double> g(n), g_new(n), d(n), s(n), yv(n), hy(n);
    std::vector<double> xtrial(n), gtrial(n);
    std::vector<double> h(n * n, 0.0); // inverse Hessian approximation
    for (std::size_t i = 0; i < n; ++i)
        h[i * n + i] = 1.0;

    double f = objective(x, g);
    if (!std::isfinite(f))
        throw NumericalError("objective not finite at the initial point");

    BfgsResult best;
    best.x = x;
    best.value = f;

    bool first_update = true;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        const double gnorm = inf_norm(g);
        if (on_iteration)
            on_iteration(iter, f, gnorm);
        if (gnorm < options.gradient_tolerance) {
            best.converged = true;
            break;
        }

        // d = -H g
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0;
            for (std::size_t j = 0; j < n; ++j)
                acc += h[i * n + j] * g[j];
            d[i] = -acc;
        }
        double slope = dot(d, g);
        if (!(slope < 0)) {
            // Reset to steepest descent if the model lost positive
            // definiteness through accumulated roundoff.
            std::fill(h.begin(), h.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                h[i * n + i] = 1.0;
                d[i] = -g[i];
            }
            slope = dot(d, g);
            if (!(slope < 0)) {
                best.converged = true; // gradient numerically zero
                break;
            }
        }

        LineFn phi{objective, x, d, xtrial, gtrial};
        double f_new = f;
        const double alpha = wolfe_search(phi, f, slope, f_new);
        if (alpha == 0) {
            best.line_search_failed = true;
            break;
        }

        for (std::size_t i = 0; i < n; ++i) {
            s[i] = alpha * d[i];
            x[i] = x[i] + s[i];
        }
        // gtrial holds the gradient at the accepted point.
        g_new = gtrial;
        for (std::size_t i = 0; i < n; ++i)
            yv[i] = g_new[i] - g[i];
        f = f_new;
        g = g_new;

        if (f < best.value) {
            best.value = f;
            best.x = x;
        }

        const double sy = dot(s, yv);
        if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(yv, yv))) {
            if (first_update) {
                // Scale the initial inverse Hessian before the first update.
                const double scale = sy / dot(yv, yv);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        h[i * n + j] = (i == j) ? scale : 0.0;
                first_update = false;
            }
            // H <- (I - r s y^T) H (I - r y s^T) + r s s^T
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0;
                for (std::size_t j = 0; j < n; ++j)
                    acc += h[i * n + j] * yv[j];
                hy[i] = acc;
            }
            const double yhy = dot(hy, yv);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    h[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                                    rho * rho * yhy * s[i] * s[j] +
                                    rho * s[i] * s[j];
                }
            }
        }
    }

    best.iterations = iter;
    if (!best.converged && !best.line_search_failed &&
        inf_norm(g) < options.gradient_tolerance)
        best.converged = true;
    return best;
}

} // namespace qdae::opt
