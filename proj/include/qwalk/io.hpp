#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/evolution.hpp"

namespace qwalk {

// Full double precision (17 significant digits) so emitted CSVs are
// bit-stable across runs.
std::string format_double(double x);

// History CSV: header "n,j0,j1,...", one row per lattice site,
// comma-separated, dot decimal, LF line endings.
std::string history_to_csv(const std::vector<std::vector<double>>& per_step,
                           const MomentumLattice& lattice);

// A distribution matrix read back from the history CSV layout: first column
// integer momentum labels, remaining columns one distribution per step.
struct DistributionMatrix {
    std::vector<int> momenta;
    std::vector<std::vector<double>> columns;  // [j][row]

    int rows() const { return static_cast<int>(momenta.size()); }
    int cols() const { return static_cast<int>(columns.size()); }
};

DistributionMatrix read_matrix_csv(const std::filesystem::path& path);

std::string energy_to_csv(const EnergySeries& series);
std::string comparison_to_csv(const ComparisonResult& result);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace qwalk
