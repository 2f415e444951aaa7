#include <doctest.h>

#include <cmath>

#include "htc/analysis.hpp"
#include "htc/error.hpp"
#include "htc/pipeline.hpp"
#include "support.hpp"

using namespace htc;

TEST_SUITE("analysis") {

TEST_CASE("sector weights are complete")
{
    testing::Rng rng(71);
    for (int trial = 0; trial < 8; ++trial) {
        const ModelParams p = testing::random_model(rng, 4);
        const TruncationParams t{3, p.n_molecules > 1 ? 1u : 0u};
        const auto c = enumerate(Manifold::one_excitation, p.n_molecules, t);
        const EigenSystem es = eigh(assemble(c, p));
        const SectorWeights w = sector_project(es, c);
        CHECK((w.total().array() - 1.0).abs().maxCoeff() < 1e-8);
        for (const auto* part : {&w.photon_vacuum, &w.dressed_sym, &w.dressed_nonsym, &w.vibronic_sym,
                                 &w.vibronic_nonsym, &w.two_particle_sym, &w.two_particle_nonsym}) {
            CHECK(part->minCoeff() >= -1e-12);
        }
    }
}

TEST_CASE("dark states without vibrations are purely non-symmetric vibronic")
{
    const ModelParams p = ModelParams::resonant(5, 1.0, 0.0);
    const auto c = enumerate(Manifold::one_excitation, 5, TruncationParams{0, 0});
    const EigenSystem es = eigh(assemble(c, p));
    const SectorWeights w = sector_project(es, c);
    for (Eigen::Index j = 1; j <= 4; ++j) {
        CHECK(std::abs(es.values(j)) < 1e-12);
        CHECK(w.vibronic_nonsym(j) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK_FALSE(is_symmetric_state(w, j));
    }
    CHECK(is_symmetric_state(w, 0));
    CHECK(w.photon_vacuum(0) == doctest::Approx(0.5));
}

TEST_CASE("degeneracy census")
{
    for (int n = 1; n <= 12; ++n) {
        const ModelParams p = ModelParams::resonant(n, 1.0, 0.0);
        const auto c = enumerate(Manifold::one_excitation, n, TruncationParams{0, 0});
        const auto levels = degeneracy_census(eigh(assemble(c, p)).values, 1e-6);
        if (n == 1) {
            CHECK(levels.size() == 2);
            continue;
        }
        REQUIRE(levels.size() == 3);
        CHECK(levels[0].multiplicity == 1);
        CHECK(levels[1].multiplicity == n - 1);
        CHECK(std::abs(levels[1].energy) < 1e-12);
        CHECK(levels[2].multiplicity == 1);
    }

    testing::Rng rng(72);
    Eigen::VectorXd v(50);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = rng.uniform(-5.0, 5.0);
    }
    std::sort(v.data(), v.data() + v.size());
    for (const auto& level : degeneracy_census(v, 1e-9)) {
        CHECK(level.multiplicity == 1);
    }
}

TEST_CASE("critical coupling where a photonic level crosses the bare transition")
{
    const ModelParams p = ModelParams::resonant(10, 1.0, 0.5);
    const CriticalRabi x = find_critical_rabi(p, TruncationParams{4, 1}, 1.5, 3.0);
    CHECK(std::abs(x.eigenvalue) < 1e-8);
    CHECK(x.rabi_collective > 2.2);
    CHECK(x.rabi_collective < 2.6);
    CHECK(x.rabi_collective == doctest::Approx(2.221976).epsilon(1e-5));

    const ModelParams flat = ModelParams::resonant(10, 1.0, 0.0);
    CHECK_THROWS_AS(find_critical_rabi(flat, TruncationParams{4, 1}, 1.5, 3.0), ParamError);
    CHECK_THROWS_AS(find_critical_rabi(p, TruncationParams{4, 1}, 3.0, 1.5), ParamError);
}

TEST_CASE("polaron decoupling at strong coupling")
{
    const ModelParams p = ModelParams::resonant(10, 5.5, 0.05, 1.0, 1.0);
    const PolaronReport r = polaron_decoupling_check(p, TruncationParams{4, 1});
    CHECK(r.passed());
    CHECK(r.expected_strength == doctest::Approx(std::exp(-0.05 / 40.0)));
    REQUIRE(r.levels.size() == 3);
    for (const auto& level : r.levels) {
        CHECK(level.strength_error < 0.01);
    }
    CHECK(r.phi_minus_overlap > 0.95);
}

TEST_CASE("polaron decoupling is exact without vibronic coupling")
{
    const ModelParams p = ModelParams::resonant(10, 5.5, 0.0, 1.0, 1.0);
    const PolaronReport r = polaron_decoupling_check(p, TruncationParams{3, 1});
    CHECK(r.passed());
    for (const auto& level : r.levels) {
        CHECK(level.spacing_error < 1e-10);
        CHECK(level.strength_error < 1e-10);
    }
}

TEST_CASE("anticrossings follow the diabatic splittings")
{
    ModelParams p = ModelParams::resonant(10, 0.4, 0.5, 1.0, 1.0);
    p.k0 = 3.4358;
    const TruncationParams t{4, 1};
    const double lambda = p.lambda();
    const Anticrossing zero = find_anticrossing(p, t, 0.0);
    const Anticrossing one = find_anticrossing(p, t, 1.0);
    const double expected_zero = diabatic_splitting(10, p.rabi_single, lambda, 0, SplittingOrder::single);
    const double expected_one = diabatic_splitting(10, p.rabi_single, lambda, 1, SplittingOrder::single);
    CHECK(zero.gap == doctest::Approx(expected_zero).epsilon(0.05));
    CHECK(one.gap == doctest::Approx(expected_one).epsilon(0.10));
    CHECK(one.k == doctest::Approx(1.1).epsilon(0.05));
    CHECK(one.minor_weight > 0.4);
}

}
