#include "qwalk/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

EnergySeries mean_energy(const DistributionHistory& history) {
    EnergySeries series;
    series.values.reserve(history.total.size());
    for (const auto& P : history.total) {
        double e = 0.0;
        for (size_t i = 0; i < P.size(); ++i) {
            const double n = history.lattice.momentum_at(static_cast<int>(i));
            e += 0.5 * n * n * P[i];
        }
        series.values.push_back(e);
    }
    return series;
}

PowerLawFit fit_power_law(const EnergySeries& series, int j_lo, int j_hi) {
    if (j_lo < 1 || j_hi > series.max_step() || j_hi < j_lo)
        throw std::invalid_argument("fit_power_law: window outside series");
    const int n = j_hi - j_lo + 1;
    if (n < 3) throw std::invalid_argument("fit_power_law: window must contain >= 3 points");

    std::vector<double> x(static_cast<size_t>(n)), y(static_cast<size_t>(n));
    for (int j = j_lo; j <= j_hi; ++j) {
        const double e = series.values[static_cast<size_t>(j)];
        if (!(e > 0.0))
            throw std::domain_error("fit_power_law: nonpositive energy at step " +
                                    std::to_string(j));
        x[static_cast<size_t>(j - j_lo)] = std::log(static_cast<double>(j));
        y[static_cast<size_t>(j - j_lo)] = std::log(e);
    }

    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += x[static_cast<size_t>(i)];
        my += y[static_cast<size_t>(i)];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = x[static_cast<size_t>(i)] - mx;
        sxx += dx * dx;
        sxy += dx * (y[static_cast<size_t>(i)] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double rss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[static_cast<size_t>(i)] - (intercept + slope * x[static_cast<size_t>(i)]);
        rss += r * r;
    }
    const double stderr_slope = std::sqrt(rss / (n - 2) / sxx);

    return PowerLawFit{slope, stderr_slope, j_lo, j_hi};
}

double central_fraction(const std::vector<double>& distribution, const MomentumLattice& lattice,
                        int halfwidth) {
    if (halfwidth < 0) throw std::invalid_argument("central_fraction: halfwidth must be >= 0");
    double mass = 0.0;
    for (int n = -halfwidth; n <= halfwidth; ++n)
        if (lattice.contains(n)) mass += distribution[static_cast<size_t>(lattice.index_of(n))];
    return mass;
}

std::pair<int, int> side_peak_bins(const std::vector<double>& distribution,
                                   const MomentumLattice& lattice) {
    int left = lattice.n_min, right = lattice.n_max;
    double best_left = -1.0, best_right = -1.0;
    for (int i = 0; i < lattice.size(); ++i) {
        const int n = lattice.momentum_at(i);
        const double p = distribution[static_cast<size_t>(i)];
        if (n < -2 && p > best_left) {
            best_left = p;
            left = n;
        }
        if (n > 2 && p > best_right) {
            best_right = p;
            right = n;
        }
    }
    return {left, right};
}

double mass_at_bins(const std::vector<double>& distribution, const MomentumLattice& lattice,
                    std::pair<int, int> bins) {
    double mass = 0.0;
    if (lattice.contains(bins.first))
        mass += distribution[static_cast<size_t>(lattice.index_of(bins.first))];
    if (lattice.contains(bins.second))
        mass += distribution[static_cast<size_t>(lattice.index_of(bins.second))];
    return mass;
}

ComparisonResult compare_walks(const std::vector<std::vector<double>>& observed,
                               const std::vector<std::vector<double>>& predicted,
                               double scale_a) {
    if (observed.size() != predicted.size())
        throw std::invalid_argument("compare_walks: matrices differ in row count");
    for (size_t r = 0; r < observed.size(); ++r)
        if (observed[r].size() != predicted[r].size())
            throw std::invalid_argument("compare_walks: matrices differ in shape at row " +
                                        std::to_string(r));
    if (!(scale_a > 0.0)) throw std::invalid_argument("compare_walks: scale must be > 0");

    ComparisonResult result;
    result.scale_a = scale_a;
    result.pixel_matrix.resize(observed.size());
    for (size_t r = 0; r < observed.size(); ++r) {
        result.pixel_matrix[r].assign(observed[r].size(), 0.0);
        for (size_t c = 0; c < observed[r].size(); ++c) {
            const double scaled = scale_a * predicted[r][c];
            if (scaled > 0.0) {
                const double d = std::abs(observed[r][c] - scaled) / scaled;
                result.pixel_matrix[r][c] = d;
                result.total_error += d;
            } else {
                ++result.skipped_pixels;
            }
        }
    }
    return result;
}

}  // namespace qwalk
