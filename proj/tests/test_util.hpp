#pragma once

// Shared test oracles, independent of the library's evaluation paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk::test {

// J_n(x) by direct quadrature of (1/pi) int_0^pi cos(n t - x sin t) dt
// (composite Simpson). Independent of the downward-recurrence path.
inline double bessel_j_quadrature(int n, double x, int intervals = 20000) {
    const double h = std::numbers::pi / intervals;
    double sum = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        const double t = i * h;
        const double f = std::cos(n * t - x * std::sin(t));
        const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += w * f;
    }
    return sum * h / 3.0 / std::numbers::pi;
}

// Random normalized state. edge_margin sites on each side are left empty so
// a following kick cannot reach the lattice boundary.
inline SpinorWavefunction random_state(const MomentumLattice& lattice, std::mt19937_64& rng,
                                       int edge_margin = 0) {
    const auto draw = [&rng] {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    };
    SpinorWavefunction state;
    state.lattice = lattice;
    state.amp2.assign(static_cast<size_t>(lattice.size()), {0.0, 0.0});
    state.amp1.assign(static_cast<size_t>(lattice.size()), {0.0, 0.0});
    for (int i = edge_margin; i < lattice.size() - edge_margin; ++i) {
        state.amp2[static_cast<size_t>(i)] = {draw(), draw()};
        state.amp1[static_cast<size_t>(i)] = {draw(), draw()};
    }
    const double norm = std::sqrt(state.norm_squared());
    for (auto& a : state.amp2) a /= norm;
    for (auto& a : state.amp1) a /= norm;
    return state;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double state_max_diff(const SpinorWavefunction& a, const SpinorWavefunction& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.amp2.size(); ++i) {
        m = std::max(m, std::abs(a.amp2[i] - b.amp2[i]));
        m = std::max(m, std::abs(a.amp1[i] - b.amp1[i]));
    }
    return m;
}

}  // namespace qwalk::test
