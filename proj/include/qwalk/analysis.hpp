#pragma once

#include <vector>

#include "qwalk/evolution.hpp"

namespace qwalk {

// Mean kinetic energy E(j) = (1/2) sum_n n^2 P(n,j), indexed by step 0..j_max.
struct EnergySeries {
    std::vector<double> values;

    int max_step() const { return static_cast<int>(values.size()) - 1; }
};

struct PowerLawFit {
    double exponent = 0.0;
    double stderr_exponent = 0.0;
    int j_lo = 0;
    int j_hi = 0;
};

// Pixelwise relative difference |observed - a*predicted| / (a*predicted),
// evaluated where predicted > 0; other pixels are skipped and counted.
struct ComparisonResult {
    std::vector<std::vector<double>> pixel_matrix;
    double total_error = 0.0;
    int skipped_pixels = 0;
    double scale_a = 1.0;
};

EnergySeries mean_energy(const DistributionHistory& history);

// Least-squares line on (log j, log E) over j in [j_lo, j_hi]; the exponent
// is the slope, its standard error comes from the fit residuals. Requires
// at least 3 points and positive energies in the window.
PowerLawFit fit_power_law(const EnergySeries& series, int j_lo, int j_hi);

// sum of P(n) over |n| <= halfwidth
double central_fraction(const std::vector<double>& distribution, const MomentumLattice& lattice,
                        int halfwidth);

// The momenta of the two ballistic side peaks (largest bins at n < -2 and
// n > 2), and the probability held in a pair of such bins. Used for the
// sweep roll-ups and the fading diagnostics.
std::pair<int, int> side_peak_bins(const std::vector<double>& distribution,
                                   const MomentumLattice& lattice);
double mass_at_bins(const std::vector<double>& distribution, const MomentumLattice& lattice,
                    std::pair<int, int> bins);

ComparisonResult compare_walks(const std::vector<std::vector<double>>& observed,
                               const std::vector<std::vector<double>>& predicted, double scale_a);

}  // namespace qwalk
