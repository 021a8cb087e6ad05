#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qdae::opt {

struct BfgsOptions {
    int max_iterations = 500;
    double gradient_tolerance = 1e-10; // infinity norm
};

struct BfgsResult {
    std::vector<double> x;
    double value = 0;
    int iterations = 0;
    bool converged = false;
    bool line_search_failed = false;
};

/// Objective fills the gradient and returns the value.
using Objective =
    std::function<double(std::span<const double>, std::span<double>)>;

using IterationCallback =
    std::function<void(int iteration, double value, double grad_inf_norm)>;

/// Quasi-Newton minimization with the inverse-Hessian update and a strong
/// Wolfe line search (c1 = 1e-4, c2 = 0.9). Returns the best point seen;
/// a line-search failure stops early with the flag set instead of aborting.
BfgsResult bfgs_minimize(const Objective& objective,
                         std::span<const double> initial,
                         const BfgsOptions& options = {},
                         const IterationCallback& on_iteration = {});

} // namespace qdae::opt
