#pragma once

#include <vector>

namespace qwalk {

// Bessel functions of the first kind, integer order.
//
// J_0..J_n_max(x) are generated in a single pass. For x beyond the highest
// requested order the upward recurrence J_{m+1} = (2m/x) J_m - J_{m-1} is
// stable; otherwise we use Miller's downward recurrence with normalization
// via J_0 + 2*sum_{m even} J_m = 1. Relative accuracy is ~1e-14 for the
// dominant orders, which covers the 1e-13 target for |m| <= 60, x <= 2.

// J_0(x), ..., J_{n_max}(x) for x >= 0.
std::vector<double> bessel_j_sequence(int n_max, double x);

// J_n(x) for any integer n and any real x, reduced to non-negative order
// and argument through J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
double bessel_j(int n, double x);

}  // namespace qwalk
