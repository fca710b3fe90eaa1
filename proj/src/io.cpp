#include "qwalk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qwalk {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string history_to_csv(const std::vector<std::vector<double>>& per_step,
                           const MomentumLattice& lattice) {
    std::ostringstream out;
    out << "n";
    for (size_t j = 0; j < per_step.size(); ++j) out << ",j" << j;
    out << '\n';
    for (int i = 0; i < lattice.size(); ++i) {
        out << lattice.momentum_at(i);
        for (const auto& column : per_step) out << ',' << format_double(column[static_cast<size_t>(i)]);
        out << '\n';
    }
    return out.str();
}

DistributionMatrix read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    DistributionMatrix matrix;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    size_t n_cols = 0;
    for (char ch : line)
        if (ch == ',') ++n_cols;
    if (n_cols == 0) throw std::runtime_error(path.string() + ": no data columns");
    matrix.columns.resize(n_cols);

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, ',')) break;
        matrix.momenta.push_back(std::stoi(cell));
        size_t c = 0;
        while (std::getline(row, cell, ',')) {
            if (c >= n_cols)
                throw std::runtime_error(path.string() + ": ragged row " +
                                         std::to_string(matrix.momenta.size()));
            matrix.columns[c].push_back(std::stod(cell));
            ++c;
        }
        if (c != n_cols)
            throw std::runtime_error(path.string() + ": ragged row " +
                                     std::to_string(matrix.momenta.size()));
    }
    return matrix;
}

std::string energy_to_csv(const EnergySeries& series) {
    std::ostringstream out;
    out << "j,E\n";
    for (size_t j = 0; j < series.values.size(); ++j)
        out << j << ',' << format_double(series.values[j]) << '\n';
    return out.str();
}

std::string comparison_to_csv(const ComparisonResult& result) {
    std::ostringstream out;
    out << "row";
    for (size_t c = 0; c < (result.pixel_matrix.empty() ? 0 : result.pixel_matrix[0].size()); ++c)
        out << ",j" << c;
    out << '\n';
    for (size_t r = 0; r < result.pixel_matrix.size(); ++r) {
        out << r;
        for (double v : result.pixel_matrix[r]) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

}  // namespace qwalk
