#include "qwalk/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qwalk/io.hpp"

namespace qwalk {

namespace {
constexpr double pi = std::numbers::pi;
}

double CoinGate::unitarity_defect() const {
    // rows of M M^dagger
    const auto c = [](std::complex<double> v) { return std::conj(v); };
    const std::complex<double> d11 = m11 * c(m11) + m12 * c(m12) - 1.0;
    const std::complex<double> d12 = m11 * c(m21) + m12 * c(m22);
    const std::complex<double> d21 = m21 * c(m11) + m22 * c(m12);
    const std::complex<double> d22 = m21 * c(m21) + m22 * c(m22) - 1.0;
    return std::max(std::max(std::abs(d11), std::abs(d12)),
                    std::max(std::abs(d21), std::abs(d22)));
}

CoinGate mw_gate(double alpha, double chi) {
    if (!std::isfinite(alpha) || !std::isfinite(chi))
        throw std::invalid_argument("mw_gate: angles must be finite");
    const double c = std::cos(alpha / 2.0);
    const double s = std::sin(alpha / 2.0);
    return CoinGate{c, std::polar(s, -chi), -std::polar(s, chi), c};
}

CoinGate hadamard_gate() {
    const double r = 1.0 / std::sqrt(2.0);
    return CoinGate{r, r, r, -r};
}

CoinGate w_gate() { return mw_gate(pi / 2.0, 0.0); }

CoinGate y_gate() { return mw_gate(pi / 2.0, -pi / 2.0); }

CoinGate lightshift_coin(double chi, double k) {
    if (!std::isfinite(chi) || !std::isfinite(k))
        throw std::invalid_argument("lightshift_coin: arguments must be finite");
    const CoinGate m = mw_gate(pi / 2.0, chi);
    const std::complex<double> down = std::polar(1.0, -k);  // phase on |2>
    const std::complex<double> up = std::polar(1.0, k);     // phase on |1>
    return CoinGate{m.m11 * down, m.m12 * up, m.m21 * down, m.m22 * up};
}

std::string to_string(const CoinGate& g) {
    const auto entry = [](std::complex<double> v) {
        return "(" + format_double(v.real()) + "," + format_double(v.imag()) + ")";
    };
    std::ostringstream out;
    out << entry(g.m11) << ' ' << entry(g.m12) << '\n'
        << entry(g.m21) << ' ' << entry(g.m22) << '\n';
    return out.str();
}

}  // namespace qwalk
