#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qwalk {

// Truncated integer-momentum lattice n_min..n_max (units of two photon
// recoils). Walk amplitudes must stay negligible at the outermost sites;
// make_lattice picks bounds wide enough for a given walk.
struct MomentumLattice {
    int n_min = 0;
    int n_max = 0;

    int size() const { return n_max - n_min + 1; }
    bool contains(int n) const { return n >= n_min && n <= n_max; }
    int index_of(int n) const { return n - n_min; }
    int momentum_at(int index) const { return n_min + index; }
};

// Momentum classes of a ratchet initial state. Class s carries amplitude
// e^{i s pi/2}/sqrt(S); consecutive classes differ in phase by exactly i.
struct RatchetSpec {
    std::vector<int> classes;

    int size() const { return static_cast<int>(classes.size()); }
    void validate() const;  // distinct, non-empty
};

enum class Spin { two, one };  // basis order: |2> = (1,0)^T, |1> = (0,1)^T

// Two-component wavefunction over the lattice. amp2/amp1 are indexed by
// site (n - n_min). Constructed states are normalized to 1 within 1e-12.
struct SpinorWavefunction {
    MomentumLattice lattice;
    std::vector<std::complex<double>> amp2;
    std::vector<std::complex<double>> amp1;

    double norm_squared() const;
    // |amp2|^2 + |amp1|^2 per site
    std::vector<double> probabilities() const;
};

// Lattice wide enough for a j_max-step walk at kick strength k from the
// given ratchet classes: margin 2*j*ceil(k) + S + 10 beyond the classes on
// each side. Edge probability stays below 1e-12 for k <= 2, j <= 30.
MomentumLattice make_lattice(int j_max, double k, const RatchetSpec& spec);

// Ratchet state e^{i s pi/2}/sqrt(S) on the listed classes, zero elsewhere,
// entirely in the requested spin component.
SpinorWavefunction ratchet_state(const RatchetSpec& spec, const MomentumLattice& lattice,
                                 Spin initial_spin = Spin::two);

// CSV with columns n, re_amp2, im_amp2, re_amp1, im_amp1 (one row per site).
std::string state_to_csv(const SpinorWavefunction& state);

}  // namespace qwalk
