#include "qwalk/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

// Downward pass: start well above both the requested order and the argument,
// recur down with rescaling against overflow, normalize by
// J_0(x) + 2 sum_{m>=1 even} J_m(x) = 1.
std::vector<double> miller_downward(int n_max, double x) {
    const int top = std::max(n_max, static_cast<int>(x)) + 16 +
                    static_cast<int>(2.0 * std::sqrt(static_cast<double>(
                                         std::max(n_max, static_cast<int>(x)) + 1)));
    const int start = top + (top % 2);  // even start keeps the norm sum aligned

    std::vector<double> out(static_cast<size_t>(n_max) + 1, 0.0);
    constexpr double rescale_limit = 1e250;
    constexpr double rescale = 1e-250;

    double above = 0.0;       // f_{m+1}
    double current = 1e-300;  // f_m, arbitrary tiny seed
    double norm = 0.0;        // accumulates f_0 + 2 f_2 + 2 f_4 + ...
    for (int m = start; m >= 0; --m) {
        if (m <= n_max) out[static_cast<size_t>(m)] = current;
        if (m % 2 == 0) norm += (m == 0) ? current : 2.0 * current;
        if (m > 0) {
            double below = (2.0 * m / x) * current - above;
            above = current;
            current = below;
            if (std::abs(current) > rescale_limit) {
                current *= rescale;
                above *= rescale;
                norm *= rescale;
                for (auto& v : out) v *= rescale;
            }
        }
    }
    for (auto& v : out) v /= norm;
    return out;
}

}  // namespace

std::vector<double> bessel_j_sequence(int n_max, double x) {
    if (n_max < 0) throw std::invalid_argument("bessel_j_sequence: n_max must be >= 0");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("bessel_j_sequence: x must be finite and >= 0");

    std::vector<double> out(static_cast<size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (x < 1e-8) {
        // power series leading terms; avoids 2m/x blowup in the recurrence
        out[0] = 1.0 - 0.25 * x * x;
        double term = 1.0;
        for (int m = 1; m <= n_max; ++m) {
            term *= 0.5 * x / m;
            out[static_cast<size_t>(m)] = term;
            if (term == 0.0) break;
        }
        return out;
    }
    return miller_downward(n_max, x);
}

double bessel_j(int n, double x) {
    double sign = 1.0;
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0) sign = -sign;
    }
    if (n < 0) {
        n = -n;
        if (n % 2 != 0) sign = -sign;
    }
    return sign * bessel_j_sequence(n, x)[static_cast<size_t>(n)];
}

}  // namespace qwalk
