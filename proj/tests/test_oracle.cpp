#include <doctest.h>

#include "htc/oracle.hpp"
#include "htc/pipeline.hpp"
#include "support.hpp"

using namespace htc;

TEST_SUITE("oracle") {

TEST_CASE("unrestricted space dimensions")
{
    const auto one = oracle::full_space(1, 1);
    CHECK(one.size() == 4);
    CHECK(one.ground_size() == 2);
    const auto two = oracle::full_space(2, 3);
    const ModelParams p = ModelParams::resonant(2, 1.0, 0.5);
    const Eigen::MatrixXd h = oracle::full_hamiltonian(p, two);
    CHECK(h.rows() == two.size());
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("engine agrees with the unrestricted oracle")
{
    CHECK(oracle::full_transition_check(ModelParams::resonant(2, 1.0, 0.0, 0.5, 0.5), 3).max() < 1e-12);

    const auto two = oracle::full_transition_check(ModelParams::resonant(2, 1.0, 0.5, 0.5, 0.5), 3);
    CHECK(two.exhaustive);
    CHECK(two.max() < 1e-10);

    const auto single = oracle::full_transition_check(ModelParams::resonant(1, 0.7, 0.8, 0.3, 0.6), 4);
    CHECK(single.exhaustive);
    CHECK(single.max() < 1e-10);

    const auto three = oracle::full_transition_check(ModelParams::resonant(3, 1.0, 0.5, 0.5, 0.5), 3, 2);
    CHECK(three.exhaustive);
    CHECK(three.max() < 1e-10);
}

TEST_CASE("random small models agree with the oracle")
{
    testing::Rng rng(91);
    for (int trial = 0; trial < 6; ++trial) {
        const ModelParams p = testing::random_model(rng, 2);
        const auto vmax = static_cast<unsigned>(rng.integer(1, 3));
        CAPTURE(p.n_molecules);
        CAPTURE(vmax);
        const auto d = oracle::full_transition_check(p, vmax);
        CHECK(d.exhaustive);
        CHECK(d.max() < 1e-10);
    }
}

TEST_CASE("one spectator at three molecules is a convergence diagnostic")
{
    const auto d = oracle::full_transition_check(ModelParams::resonant(3, 1.0, 0.5, 0.5, 0.5), 3, 1);
    CHECK_FALSE(d.exhaustive);
    CHECK(d.eigenvalues > 0.0);
    CHECK(d.eigenvalues < 0.1);
}

TEST_CASE("oracle spectrum matches the engine eigenvalues")
{
    const ModelParams p = ModelParams::resonant(2, 1.0, 0.5);
    const EigenSystem full = oracle::full_spectrum(p, 3);
    const auto c = enumerate(Manifold::one_excitation, 2, TruncationParams{3, 1});
    CHECK(testing::max_abs_diff(full.values, eigh(assemble(c, p)).values) < 1e-10);
}

}
