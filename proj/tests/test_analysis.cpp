#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/analysis.hpp"
#include "qwalk/evolution.hpp"

using namespace qwalk;

namespace {
constexpr double pi = std::numbers::pi;

DistributionHistory history_of(const MomentumLattice& lattice,
                               std::vector<std::vector<double>> per_step) {
    DistributionHistory h;
    h.lattice = lattice;
    h.steps = static_cast<int>(per_step.size()) - 1;
    h.total = per_step;
    h.spin2 = per_step;  // spin split irrelevant for these diagnostics
    for (auto& row : per_step)
        for (auto& v : row) v = 0.0;
    h.spin1 = per_step;
    return h;
}
}  // namespace

TEST_CASE("mean_energy basics") {
    const MomentumLattice lattice{-3, 3};
    std::vector<double> ratchet(7, 0.0);
    ratchet[static_cast<size_t>(lattice.index_of(0))] = 0.5;
    ratchet[static_cast<size_t>(lattice.index_of(1))] = 0.5;
    std::vector<double> delta(7, 0.0);
    delta[static_cast<size_t>(lattice.index_of(0))] = 1.0;

    const auto series = mean_energy(history_of(lattice, {ratchet, delta}));
    CHECK(series.values[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(series.values[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("mean_energy invariant under momentum reflection") {
    const MomentumLattice lattice{-8, 8};
    std::mt19937_64 rng(3);
    std::vector<double> P(17);
    double sum = 0.0;
    for (auto& p : P) {
        p = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        sum += p;
    }
    for (auto& p : P) p /= sum;
    std::vector<double> mirrored(P.rbegin(), P.rend());

    const auto e = mean_energy(history_of(lattice, {P}));
    const auto e_mirrored = mean_energy(history_of(lattice, {mirrored}));
    CHECK(e.values[0] == doctest::Approx(e_mirrored.values[0]).epsilon(1e-14));
}

TEST_CASE("fit_power_law recovers exact exponents") {
    EnergySeries quadratic, linear;
    for (int j = 0; j <= 15; ++j) {
        quadratic.values.push_back(3.0 * j * j);
        linear.values.push_back(5.0 * j);
    }
    const auto fit2 = fit_power_law(quadratic, 2, 15);
    CHECK(std::abs(fit2.exponent - 2.0) < 1e-12);
    CHECK(std::abs(fit2.stderr_exponent) < 1e-12);

    const auto fit1 = fit_power_law(linear, 1, 15);
    CHECK(std::abs(fit1.exponent - 1.0) < 1e-12);
    CHECK(std::abs(fit1.stderr_exponent) < 1e-12);
}

TEST_CASE("fit_power_law input validation") {
    EnergySeries series;
    for (int j = 0; j <= 10; ++j) series.values.push_back(static_cast<double>(j));
    CHECK_THROWS_AS(fit_power_law(series, 5, 6), std::invalid_argument);   // 2 points
    CHECK_THROWS_AS(fit_power_law(series, 0, 10), std::invalid_argument);  // log(0)
    CHECK_THROWS_AS(fit_power_law(series, 8, 20), std::invalid_argument);  // outside

    series.values[4] = 0.0;
    CHECK_THROWS_AS(fit_power_law(series, 2, 8), std::domain_error);
}

TEST_CASE("resonant original-protocol walk is near-ballistic over [5,15]") {
    const RatchetSpec spec{{0, 1}};
    const MomentumLattice lattice = make_lattice(15, 1.45, spec);
    const auto history = run_walk(original_protocol(), ratchet_state(spec, lattice, Spin::two),
                                  15, KickParams{1.45, 4 * pi, false}, 0.0);
    const auto fit = fit_power_law(mean_energy(history), 5, 15);
    CHECK(fit.exponent > 1.8);
    CHECK(fit.exponent < 2.0);
}

TEST_CASE("central_fraction") {
    const MomentumLattice lattice{-10, 10};
    std::vector<double> delta(21, 0.0);
    delta[static_cast<size_t>(lattice.index_of(0))] = 1.0;
    CHECK(central_fraction(delta, lattice, 0) == doctest::Approx(1.0));

    std::vector<double> uniform(21, 1.0 / 21.0);
    CHECK(central_fraction(uniform, lattice, 2) == doctest::Approx(5.0 / 21.0).epsilon(1e-14));

    CHECK_THROWS_AS(central_fraction(uniform, lattice, -1), std::invalid_argument);
}

TEST_CASE("central fraction falls as the ratchet broadens") {
    double previous = 1.0;
    for (int S : {2, 3, 5}) {
        RatchetSpec spec{{}};
        for (int s = 0; s < S; ++s) spec.classes.push_back(s);
        const MomentumLattice lattice = make_lattice(20, 1.45, spec);
        const auto history = run_walk(swapped_protocol(), ratchet_state(spec, lattice, Spin::two),
                                      20, KickParams{1.45, 4 * pi, false}, 0.0);
        const double cf = central_fraction(history.total[20], history.lattice, 2);
        CHECK(cf < previous);
        previous = cf;
    }
}

TEST_CASE("compare_walks") {
    const std::vector<std::vector<double>> X{{0.1, 0.2}, {0.3, 0.4}};

    SUBCASE("identity and scale consistency") {
        const auto same = compare_walks(X, X, 1.0);
        CHECK(same.total_error == 0.0);
        CHECK(same.skipped_pixels == 0);

        std::vector<std::vector<double>> tripled = X;
        for (auto& row : tripled)
            for (auto& v : row) v *= 3.0;
        const auto scaled = compare_walks(tripled, X, 3.0);
        CHECK(scaled.total_error == doctest::Approx(0.0).epsilon(1e-14));
    }

    SUBCASE("observed = 2a * predicted puts 1.0 in every pixel") {
        std::vector<std::vector<double>> doubled = X;
        for (auto& row : doubled)
            for (auto& v : row) v *= 6.0;  // 2a with a = 3
        const auto result = compare_walks(doubled, X, 3.0);
        for (const auto& row : result.pixel_matrix)
            for (double v : row) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(result.total_error == doctest::Approx(4.0).epsilon(1e-13));
    }

    SUBCASE("zero predicted pixels are skipped and counted") {
        std::vector<std::vector<double>> holes = X;
        holes[0][1] = 0.0;
        const auto result = compare_walks(X, holes, 1.0);
        CHECK(result.skipped_pixels == 1);
        CHECK(result.pixel_matrix[0][1] == 0.0);
    }

    SUBCASE("shape mismatch rejected") {
        const std::vector<std::vector<double>> ragged{{0.1, 0.2}};
        CHECK_THROWS_AS(compare_walks(X, ragged, 1.0), std::invalid_argument);
    }
}
