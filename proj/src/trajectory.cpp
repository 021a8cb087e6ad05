#include "qdae/trajectory.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qdae/errors.hpp"

namespace qdae::oracle {

int Trajectory::find_var(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return static_cast<int>(i);
    return -1;
}

void Trajectory::validate() const {
    if (names.size() != values.size())
        throw std::invalid_argument("trajectory name/value column mismatch");
    for (const auto& col : values)
        if (col.size() != times.size())
            throw std::invalid_argument(
                "trajectory columns must match the time grid");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument(
                "trajectory times must be strictly increasing");
}

double mse(const Trajectory& a, const Trajectory& b, const std::string& var) {
    const int ia = a.find_var(var);
    const int ib = b.find_var(var);
    if (ia < 0 || ib < 0)
        throw std::invalid_argument("unknown trajectory variable: " + var);
    if (a.times.size() != b.times.size())
        throw std::invalid_argument("trajectory grids differ in length");
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        const double scale = std::max(1.0, std::abs(a.times[i]));
        if (std::abs(a.times[i] - b.times[i]) > 1e-9 * scale)
            throw std::invalid_argument("trajectory grids do not match");
    }
    if (a.times.empty())
        return 0.0;
    double acc = 0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        const double d = a.values[ia][i] - b.values[ib][i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.times.size());
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const Trajectory& t) {
    t.validate();
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << "t";
    for (const auto& n : t.names)
        out << ',' << n;
    out << '\n';
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        out << format_double(t.times[i]);
        for (const auto& col : t.values)
            out << ',' << format_double(col[i]);
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("short write to " + path.string());
}

Trajectory read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("empty csv: " + path.string());
    Trajectory t;
    {
        std::stringstream header(line);
        std::string cell;
        bool first = true;
        while (std::getline(header, cell, ',')) {
            if (first) {
                if (cell != "t")
                    throw ConfigError("csv must start with a 't' column: " +
                                      path.string());
                first = false;
            } else {
                t.names.push_back(cell);
            }
        }
    }
    t.values.assign(t.names.size(), {});
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::stringstream row(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(row, cell, ',')) {
            double v = 0;
            const auto res =
                std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc{})
                throw ConfigError("bad numeric cell '" + cell + "' in " +
                                  path.string());
            if (col == 0)
                t.times.push_back(v);
            else if (col - 1 < t.values.size())
                t.values[col - 1].push_back(v);
            else
                throw ConfigError("row wider than header in " + path.string());
            ++col;
        }
        if (col != t.names.size() + 1)
            throw ConfigError("row narrower than header in " + path.string());
    }
    t.validate();
    return t;
}

} // namespace qdae::oracle
