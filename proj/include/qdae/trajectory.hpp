#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qdae::oracle {

/// Time series of named variables on a strictly increasing grid.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::string> names;
    std::vector<std::vector<double>> values; // [variable][sample]

    int find_var(const std::string& name) const; // -1 if absent
    void validate() const;
};

/// Mean squared pointwise difference of one variable. Both trajectories must
/// be sampled on the same grid.
double mse(const Trajectory& a, const Trajectory& b, const std::string& var);

/// Lossless double formatting (17 significant digits, '.' decimal).
std::string format_double(double v);

/// CSV with header "t,<var>,..." and one row per sample.
void write_csv(const std::filesystem::path& path, const Trajectory& t);
Trajectory read_csv(const std::filesystem::path& path);

} // namespace qdae::oracle
