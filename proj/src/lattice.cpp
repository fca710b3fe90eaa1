#include "qwalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qwalk/io.hpp"

namespace qwalk {

void RatchetSpec::validate() const {
    if (classes.empty()) throw std::invalid_argument("ratchet classes must be non-empty");
    std::set<int> unique(classes.begin(), classes.end());
    if (unique.size() != classes.size())
        throw std::invalid_argument("ratchet classes must be distinct");
}

double SpinorWavefunction::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amp2) total += std::norm(a);
    for (const auto& a : amp1) total += std::norm(a);
    return total;
}

std::vector<double> SpinorWavefunction::probabilities() const {
    std::vector<double> p(amp2.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amp2[i]) + std::norm(amp1[i]);
    return p;
}

MomentumLattice make_lattice(int j_max, double k, const RatchetSpec& spec) {
    if (j_max < 0) throw std::invalid_argument("make_lattice: j_max must be >= 0");
    if (!std::isfinite(k) || k < 0.0)
        throw std::invalid_argument("make_lattice: k must be finite and >= 0");
    spec.validate();

    const auto [lo, hi] = std::minmax_element(spec.classes.begin(), spec.classes.end());
    const int margin = 2 * j_max * static_cast<int>(std::ceil(k)) + spec.size() + 10;
    return MomentumLattice{*lo - margin, *hi + margin};
}

SpinorWavefunction ratchet_state(const RatchetSpec& spec, const MomentumLattice& lattice,
                                 Spin initial_spin) {
    spec.validate();
    for (int s : spec.classes)
        if (!lattice.contains(s))
            throw std::out_of_range("ratchet_state: class " + std::to_string(s) +
                                    " outside lattice");

    SpinorWavefunction state;
    state.lattice = lattice;
    state.amp2.assign(static_cast<size_t>(lattice.size()), {0.0, 0.0});
    state.amp1.assign(static_cast<size_t>(lattice.size()), {0.0, 0.0});

    const double weight = 1.0 / std::sqrt(static_cast<double>(spec.size()));
    for (int s : spec.classes) {
        const double phase = s * std::numbers::pi / 2.0;
        const std::complex<double> amp = weight * std::polar(1.0, phase);
        auto& component = (initial_spin == Spin::two) ? state.amp2 : state.amp1;
        component[static_cast<size_t>(lattice.index_of(s))] = amp;
    }
    return state;
}

std::string state_to_csv(const SpinorWavefunction& state) {
    std::ostringstream out;
    out << "n,re_amp2,im_amp2,re_amp1,im_amp1\n";
    for (int i = 0; i < state.lattice.size(); ++i) {
        const auto& a2 = state.amp2[static_cast<size_t>(i)];
        const auto& a1 = state.amp1[static_cast<size_t>(i)];
        out << state.lattice.momentum_at(i) << ',' << format_double(a2.real()) << ','
            << format_double(a2.imag()) << ',' << format_double(a1.real()) << ','
            << format_double(a1.imag()) << '\n';
    }
    return out.str();
}

}  // namespace qwalk
