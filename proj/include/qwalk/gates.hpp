#pragma once

#include <complex>
#include <string>

namespace qwalk {

// 2x2 coin unitary acting on the internal spin, row-major, basis (|2>, |1>).
struct CoinGate {
    std::complex<double> m11, m12, m21, m22;

    // max entrywise deviation of M M^dagger from the identity
    double unitarity_defect() const;
};

// Microwave rotation
//   [[cos(a/2),            e^{-i chi} sin(a/2)],
//    [-e^{i chi} sin(a/2), cos(a/2)]]
CoinGate mw_gate(double alpha, double chi);

// (1/sqrt2) [[1,1],[1,-1]]
CoinGate hadamard_gate();

// W = mw_gate(pi/2, 0), Y = mw_gate(pi/2, -pi/2): the walk's two coins.
CoinGate w_gate();
CoinGate y_gate();

// Combined microwave pulse and per-kick light-shift phase,
// mw_gate(pi/2, chi) * diag(e^{-ik}, e^{+ik})
//   = e^{-ik}/sqrt2 [[1, e^{-i(chi-2k)}], [-e^{i chi}, e^{i 2k}]],
// a Hadamard up to global phase when chi = 2k = pi (mod 2pi).
CoinGate lightshift_coin(double chi, double k);

// Fixed text format, one "(re,im)" per entry, for golden-file tests.
std::string to_string(const CoinGate& g);

}  // namespace qwalk
