#pragma once

#include <numbers>
#include <stdexcept>
#include <vector>

#include "qwalk/gates.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

// Thrown when probability reaches the lattice edge (kernel truncated).
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct KickParams {
    double k = 1.45;                             // kick strength
    double tau = 4.0 * std::numbers::pi;         // kick period; resonance at 4*pi
    bool light_shift = false;  // extra e^{-ik}/e^{+ik} constant phase on |2>/|1> per kick
};

enum class CoinPosition { before_kick, after_kick };

struct WalkProtocol {
    CoinGate init_coin;
    CoinGate step_coin;
    bool light_shift = false;
    CoinPosition coin_position = CoinPosition::before_kick;
};

// The three named protocols. lightshift_raw carries the per-kick light-shift
// phase and uses plain microwave coins with compensation phase chi.
WalkProtocol original_protocol();                 // init W, step Y
WalkProtocol swapped_protocol();                  // init Y, step Hadamard
WalkProtocol lightshift_raw_protocol(double chi); // init Y, step mw(pi/2, chi), light shift on

// Total and per-spin momentum distributions after steps 0..steps.
// P_total = P_spin2 + P_spin1 pointwise by construction.
struct DistributionHistory {
    MomentumLattice lattice;
    int steps = 0;
    std::vector<std::vector<double>> total;   // [j][site]
    std::vector<std::vector<double>> spin2;
    std::vector<std::vector<double>> spin1;
};

// Kick operator e^{-/+ i k cos(theta)} on spin |2>/|1>, applied in the
// momentum basis as the Bessel kernel c'_m = sum_d (-/+ i)^d J_d(k) c_{m+d}.
// With light_shift set, spin |2> additionally gets e^{-ik} and |1> e^{+ik}.
// Throws TruncationError if edge probability exceeds 1e-9 afterwards.
SpinorWavefunction apply_kick(const SpinorWavefunction& state, const KickParams& params);

// Free evolution e^{-i tau (n+beta)^2 / 2} on both spins; beta in [0,1).
SpinorWavefunction apply_free(const SpinorWavefunction& state, double tau, double beta);

// (amp2, amp1) <- M (amp2, amp1) at every site.
SpinorWavefunction apply_coin(const SpinorWavefunction& state, const CoinGate& gate);

// init_coin + kick + free once, then [step_coin + kick + free] for the
// remaining steps (coin after the kick instead when coin_position says so).
// Records the distribution after every step including step 0. The kick uses
// params.k/params.tau with the protocol's light_shift flag.
DistributionHistory run_walk(const WalkProtocol& protocol, const SpinorWavefunction& initial,
                             int steps, const KickParams& params, double beta);

// Independent check of apply_kick: transform to a uniform angle grid,
// multiply by e^{-/+ i k cos(theta)} pointwise, transform back by direct
// quadrature. Exact up to aliasing; needs grid_points >= 4 * lattice size.
SpinorWavefunction quadrature_kick_oracle(const SpinorWavefunction& state,
                                          const KickParams& params, int grid_points);

}  // namespace qwalk
