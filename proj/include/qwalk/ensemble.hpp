#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qwalk/evolution.hpp"

namespace qwalk {

// Quasi-momentum ensemble: a thermal fraction drawn uniformly from [0,1)
// plus a Gaussian of the given FWHM centered at beta = 0, wrapped mod 1.
struct QuasiMomentumEnsemble {
    double fwhm = 0.0;
    int n_samples = 1;
    std::uint64_t seed = 0;
    double thermal_fraction = 0.0;

    void validate() const;
};

// Portable draws on top of std::mt19937_64 (the engine's output sequence is
// fixed by the standard; std::*_distribution is not, so the mappings are
// spelled out here and pinned by golden tests):
//   uniform: (x >> 11) * 2^-53 in [0,1)
//   normal:  Box-Muller cosine branch, two uniforms per draw,
//            sqrt(-2 ln(1-u1)) * cos(2 pi u2)
double uniform_unit(std::mt19937_64& rng);
double normal_draw(std::mt19937_64& rng);

// round(f*n) uniform samples first, then the Gaussian rest with
// sigma = fwhm / sqrt(8 ln 2); one stream, fixed order, wrapped into [0,1).
std::vector<double> sample_betas(const QuasiMomentumEnsemble& ensemble);

// Arithmetic mean of the per-beta histories, reduced in sample order.
// Output is identical for any worker count: samples are computed
// independently and folded sequentially by index.
DistributionHistory ensemble_distribution(const WalkProtocol& protocol, const RatchetSpec& spec,
                                          int steps, const KickParams& params,
                                          const QuasiMomentumEnsemble& ensemble, int workers = 1);

}  // namespace qwalk
