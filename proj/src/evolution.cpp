#include "qwalk/evolution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qwalk/bessel.hpp"

namespace qwalk {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double edge_leak_limit = 1e-9;

// i^r for integer r
std::complex<double> unit_power(int r) {
    switch (((r % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

void check_edges(const SpinorWavefunction& state) {
    const size_t last = state.amp2.size() - 1;
    const double p_lo = std::norm(state.amp2[0]) + std::norm(state.amp1[0]);
    const double p_hi = std::norm(state.amp2[last]) + std::norm(state.amp1[last]);
    if (p_lo > edge_leak_limit || p_hi > edge_leak_limit)
        throw TruncationError("apply_kick: edge probability " +
                              std::to_string(std::max(p_lo, p_hi)) +
                              " exceeds 1e-9; lattice too small");
}

}  // namespace

WalkProtocol original_protocol() { return WalkProtocol{w_gate(), y_gate(), false}; }

WalkProtocol swapped_protocol() { return WalkProtocol{y_gate(), hadamard_gate(), false}; }

WalkProtocol lightshift_raw_protocol(double chi) {
    return WalkProtocol{y_gate(), mw_gate(pi / 2.0, chi), true};
}

SpinorWavefunction apply_kick(const SpinorWavefunction& state, const KickParams& params) {
    if (!std::isfinite(params.k) || params.k < 0.0)
        throw std::invalid_argument("apply_kick: k must be finite and >= 0");

    const int size = state.lattice.size();
    // couplings beyond the band are below 1e-18 and cannot move probability
    // above the edge-leak budget over any 30-step run
    std::vector<double> J = bessel_j_sequence(size - 1, params.k);
    int band = size - 1;
    while (band > 0 && std::abs(J[static_cast<size_t>(band)]) < 1e-18) --band;

    // c'_m = sum_d (-/+ i)^d J_d(k) c_{m+d},  J_{-d} = (-1)^d J_d
    std::vector<std::complex<double>> w2(static_cast<size_t>(2 * band + 1));
    std::vector<std::complex<double>> w1(static_cast<size_t>(2 * band + 1));
    for (int d = -band; d <= band; ++d) {
        const double jd = (d >= 0 ? J[static_cast<size_t>(d)]
                                  : (d % 2 == 0 ? J[static_cast<size_t>(-d)]
                                                : -J[static_cast<size_t>(-d)]));
        w2[static_cast<size_t>(d + band)] = unit_power(-d) * jd;  // (-i)^d
        w1[static_cast<size_t>(d + band)] = unit_power(d) * jd;   // (+i)^d
    }

    SpinorWavefunction next;
    next.lattice = state.lattice;
    next.amp2.assign(static_cast<size_t>(size), {0.0, 0.0});
    next.amp1.assign(static_cast<size_t>(size), {0.0, 0.0});
    for (int m = 0; m < size; ++m) {
        const int d_lo = std::max(-band, -m);
        const int d_hi = std::min(band, size - 1 - m);
        std::complex<double> acc2{0.0, 0.0};
        std::complex<double> acc1{0.0, 0.0};
        for (int d = d_lo; d <= d_hi; ++d) {
            acc2 += w2[static_cast<size_t>(d + band)] * state.amp2[static_cast<size_t>(m + d)];
            acc1 += w1[static_cast<size_t>(d + band)] * state.amp1[static_cast<size_t>(m + d)];
        }
        next.amp2[static_cast<size_t>(m)] = acc2;
        next.amp1[static_cast<size_t>(m)] = acc1;
    }

    if (params.light_shift) {
        const std::complex<double> down = std::polar(1.0, -params.k);
        const std::complex<double> up = std::polar(1.0, params.k);
        for (auto& a : next.amp2) a *= down;
        for (auto& a : next.amp1) a *= up;
    }

    check_edges(next);
    return next;
}

SpinorWavefunction apply_free(const SpinorWavefunction& state, double tau, double beta) {
    if (!(beta >= 0.0 && beta < 1.0))
        throw std::invalid_argument("apply_free: beta must lie in [0,1)");
    if (!std::isfinite(tau) || tau <= 0.0)
        throw std::invalid_argument("apply_free: tau must be finite and > 0");

    SpinorWavefunction next = state;
    for (int i = 0; i < state.lattice.size(); ++i) {
        const double p = state.lattice.momentum_at(i) + beta;
        const std::complex<double> phase = std::polar(1.0, -tau * p * p / 2.0);
        next.amp2[static_cast<size_t>(i)] *= phase;
        next.amp1[static_cast<size_t>(i)] *= phase;
    }
    return next;
}

SpinorWavefunction apply_coin(const SpinorWavefunction& state, const CoinGate& gate) {
    SpinorWavefunction next = state;
    for (size_t i = 0; i < state.amp2.size(); ++i) {
        const auto a2 = state.amp2[i];
        const auto a1 = state.amp1[i];
        next.amp2[i] = gate.m11 * a2 + gate.m12 * a1;
        next.amp1[i] = gate.m21 * a2 + gate.m22 * a1;
    }
    return next;
}

DistributionHistory run_walk(const WalkProtocol& protocol, const SpinorWavefunction& initial,
                             int steps, const KickParams& params, double beta) {
    if (steps < 0) throw std::invalid_argument("run_walk: steps must be >= 0");

    KickParams kick = params;
    kick.light_shift = protocol.light_shift;

    DistributionHistory history;
    history.lattice = initial.lattice;
    history.steps = steps;
    history.total.reserve(static_cast<size_t>(steps) + 1);
    history.spin2.reserve(static_cast<size_t>(steps) + 1);
    history.spin1.reserve(static_cast<size_t>(steps) + 1);

    const auto record = [&history](const SpinorWavefunction& s) {
        std::vector<double> p2(s.amp2.size());
        std::vector<double> p1(s.amp1.size());
        std::vector<double> pt(s.amp2.size());
        for (size_t i = 0; i < s.amp2.size(); ++i) {
            p2[i] = std::norm(s.amp2[i]);
            p1[i] = std::norm(s.amp1[i]);
            pt[i] = p2[i] + p1[i];
        }
        history.spin2.push_back(std::move(p2));
        history.spin1.push_back(std::move(p1));
        history.total.push_back(std::move(pt));
    };

    SpinorWavefunction state = initial;
    record(state);
    for (int step = 1; step <= steps; ++step) {
        const CoinGate& coin = (step == 1) ? protocol.init_coin : protocol.step_coin;
        if (protocol.coin_position == CoinPosition::before_kick) {
            state = apply_coin(state, coin);
            state = apply_kick(state, kick);
            state = apply_free(state, kick.tau, beta);
        } else {
            state = apply_kick(state, kick);
            state = apply_free(state, kick.tau, beta);
            state = apply_coin(state, coin);
        }
        record(state);
    }
    return history;
}

SpinorWavefunction quadrature_kick_oracle(const SpinorWavefunction& state,
                                          const KickParams& params, int grid_points) {
    const int size = state.lattice.size();
    if (grid_points < 4 * size)
        throw std::invalid_argument(
            "quadrature_kick_oracle: grid_points must be >= 4 * lattice size (aliasing)");

    // psi(theta_g) = sum_n c_n e^{i n theta_g}, pointwise kick phase,
    // c'_m = (1/G) sum_g e^{-i m theta_g} psi'(theta_g)
    const int G = grid_points;
    std::vector<std::complex<double>> grid2(static_cast<size_t>(G));
    std::vector<std::complex<double>> grid1(static_cast<size_t>(G));
    for (int g = 0; g < G; ++g) {
        const double theta = 2.0 * pi * g / G;
        std::complex<double> v2{0.0, 0.0};
        std::complex<double> v1{0.0, 0.0};
        for (int i = 0; i < size; ++i) {
            const int n = state.lattice.momentum_at(i);
            const std::complex<double> e = std::polar(1.0, n * theta);
            v2 += state.amp2[static_cast<size_t>(i)] * e;
            v1 += state.amp1[static_cast<size_t>(i)] * e;
        }
        const double kc = params.k * std::cos(theta);
        v2 *= std::polar(1.0, -kc);
        v1 *= std::polar(1.0, kc);
        if (params.light_shift) {
            v2 *= std::polar(1.0, -params.k);
            v1 *= std::polar(1.0, params.k);
        }
        grid2[static_cast<size_t>(g)] = v2;
        grid1[static_cast<size_t>(g)] = v1;
    }

    SpinorWavefunction next;
    next.lattice = state.lattice;
    next.amp2.assign(static_cast<size_t>(size), {0.0, 0.0});
    next.amp1.assign(static_cast<size_t>(size), {0.0, 0.0});
    for (int i = 0; i < size; ++i) {
        const int m = state.lattice.momentum_at(i);
        std::complex<double> acc2{0.0, 0.0};
        std::complex<double> acc1{0.0, 0.0};
        for (int g = 0; g < G; ++g) {
            const double theta = 2.0 * pi * g / G;
            const std::complex<double> e = std::polar(1.0, -m * theta);
            acc2 += grid2[static_cast<size_t>(g)] * e;
            acc1 += grid1[static_cast<size_t>(g)] * e;
        }
        next.amp2[static_cast<size_t>(i)] = acc2 / static_cast<double>(G);
        next.amp1[static_cast<size_t>(i)] = acc1 / static_cast<double>(G);
    }
    return next;
}

}  // namespace qwalk
