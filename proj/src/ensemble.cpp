#include "qwalk/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qwalk/lattice.hpp"

namespace qwalk {

void QuasiMomentumEnsemble::validate() const {
    if (!(fwhm >= 0.0) || !std::isfinite(fwhm))
        throw std::invalid_argument("ensemble: fwhm must be finite and >= 0");
    if (n_samples < 1) throw std::invalid_argument("ensemble: n_samples must be >= 1");
    if (!(thermal_fraction >= 0.0 && thermal_fraction <= 1.0))
        throw std::invalid_argument("ensemble: thermal_fraction must lie in [0,1]");
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal_draw(std::mt19937_64& rng) {
    const double u1 = uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> sample_betas(const QuasiMomentumEnsemble& ensemble) {
    ensemble.validate();
    std::mt19937_64 rng(ensemble.seed);

    const int n_uniform =
        static_cast<int>(std::lround(ensemble.thermal_fraction * ensemble.n_samples));
    const double sigma = ensemble.fwhm / std::sqrt(8.0 * std::log(2.0));

    std::vector<double> betas;
    betas.reserve(static_cast<size_t>(ensemble.n_samples));
    for (int i = 0; i < n_uniform; ++i) betas.push_back(uniform_unit(rng));
    for (int i = n_uniform; i < ensemble.n_samples; ++i) {
        const double g = sigma * normal_draw(rng);
        betas.push_back(g - std::floor(g));  // wrap into [0,1)
    }
    return betas;
}

DistributionHistory ensemble_distribution(const WalkProtocol& protocol, const RatchetSpec& spec,
                                          int steps, const KickParams& params,
                                          const QuasiMomentumEnsemble& ensemble, int workers) {
    if (workers < 1) throw std::invalid_argument("ensemble_distribution: workers must be >= 1");
    const std::vector<double> betas = sample_betas(ensemble);
    const MomentumLattice lattice = make_lattice(steps, params.k, spec);
    const SpinorWavefunction initial = ratchet_state(spec, lattice, Spin::two);

    // Per-sample histories are computed independently (any thread), then
    // folded strictly in sample order so the result is bitwise identical
    // for every worker count.
    std::vector<DistributionHistory> runs(betas.size());
    std::vector<std::string> failures(betas.size());
    std::atomic<size_t> cursor{0};
    const auto work = [&] {
        for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= betas.size()) return;
            try {
                runs[i] = run_walk(protocol, initial, steps, params, betas[i]);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            throw TruncationError("ensemble sample " + std::to_string(i) +
                                  " (beta = " + std::to_string(betas[i]) + "): " + failures[i]);

    DistributionHistory mean;
    mean.lattice = lattice;
    mean.steps = steps;
    const size_t n_steps = static_cast<size_t>(steps) + 1;
    const size_t size = static_cast<size_t>(lattice.size());
    mean.total.assign(n_steps, std::vector<double>(size, 0.0));
    mean.spin2.assign(n_steps, std::vector<double>(size, 0.0));
    mean.spin1.assign(n_steps, std::vector<double>(size, 0.0));
    for (const DistributionHistory& run : runs) {
        for (size_t j = 0; j < n_steps; ++j) {
            for (size_t i = 0; i < size; ++i) {
                mean.total[j][i] += run.total[j][i];
                mean.spin2[j][i] += run.spin2[j][i];
                mean.spin1[j][i] += run.spin1[j][i];
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(betas.size());
    for (size_t j = 0; j < n_steps; ++j)
        for (size_t i = 0; i < size; ++i) {
            mean.total[j][i] *= inv;
            mean.spin2[j][i] *= inv;
            mean.spin1[j][i] *= inv;
        }
    return mean;
}

}  // namespace qwalk
