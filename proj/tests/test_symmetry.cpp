#include <doctest.h>

#include <cmath>

#include "htc/analysis.hpp"
#include "htc/observables.hpp"
#include "htc/symmetry.hpp"
#include "support.hpp"

using namespace htc;

namespace {

struct Expanded {
    Eigen::VectorXd values;
    Eigen::VectorXd photon_weight;
};

Expanded full_catalog(const ModelParams& p, const TruncationParams& t)
{
    const auto c = enumerate(Manifold::one_excitation, p.n_molecules, t);
    const EigenSystem es = eigh(assemble(c, p));
    return {es.values, photon_weights(c, es)};
}

} // namespace

TEST_SUITE("symmetry") {

TEST_CASE("block spectra reproduce the full catalog")
{
    testing::Rng rng(81);
    for (int trial = 0; trial < 16; ++trial) {
        const int n = rng.integer(1, 7);
        const ModelParams p = ModelParams::resonant(n, rng.uniform(0.1, 3.0), rng.uniform(0.0, 1.0));
        const TruncationParams t{static_cast<unsigned>(rng.integer(0, 4)), n > 1 ? 1u : 0u};
        CAPTURE(n);
        CAPTURE(t.total_quanta);
        REQUIRE(symmetry_supported(t));

        const auto blocks = build_symmetric_blocks(p, t);
        long states = 0;
        for (const auto& b : blocks) {
            states += b.multiplicity * static_cast<long>(b.matrix.dimension());
            CHECK(b.labels.size() == b.matrix.dimension());
        }
        const Expanded full = full_catalog(p, t);
        CHECK(states == full.values.size());

        const BlockSpectrum merged = merged_spectrum(blocks);
        CHECK(testing::max_abs_diff(merged.values, full.values) < 1e-9);

        // photon weight per energy level
        for (const auto& level : degeneracy_census(full.values, 1e-7)) {
            const auto m = static_cast<Eigen::Index>(level.multiplicity);
            CHECK(std::abs(merged.photon_weight.segment(level.first, m).sum() -
                           full.photon_weight.segment(level.first, m).sum()) < 1e-8);
        }
    }
}

TEST_CASE("block content at ten molecules")
{
    const TruncationParams t{4, 1};
    const ModelParams p = ModelParams::resonant(10, 1.0, 0.5);
    const auto blocks = build_symmetric_blocks(p, t);
    REQUIRE(blocks.size() == 4);
    CHECK(blocks[0].kind == BlockKind::symmetric);
    CHECK(blocks[0].multiplicity == 1);
    CHECK(blocks[1].multiplicity == 9);
    CHECK(blocks[2].multiplicity == 35);
    CHECK(blocks[3].multiplicity == 36);
    CHECK(blocks[0].vacuum_photon >= 0);
    CHECK(blocks[0].photon_mask(blocks[0].vacuum_photon) == 1.0);
}

TEST_CASE("without vibronic coupling the blocks reduce to the polariton doublet and bare dark states")
{
    const double rabi = 0.9;
    const ModelParams p = ModelParams::resonant(6, rabi, 0.0);
    const auto blocks = build_symmetric_blocks(p, TruncationParams{0, 1});
    const EigenSystem sym = eigh(blocks[0].matrix);
    REQUIRE(sym.size() == 2);
    CHECK(sym.values(0) == doctest::Approx(-rabi / 2).epsilon(1e-14));
    CHECK(sym.values(1) == doctest::Approx(rabi / 2).epsilon(1e-14));
    for (std::size_t b = 1; b < blocks.size(); ++b) {
        const Eigen::MatrixXd h = blocks[b].matrix.dense();
        CHECK(h.isZero(1e-15));
    }
}

TEST_CASE("three-particle truncations are not block-reduced")
{
    CHECK(symmetry_supported(TruncationParams{4, 1}));
    CHECK(symmetry_supported(TruncationParams{4, 0}));
    CHECK_FALSE(symmetry_supported(TruncationParams{4, 2}));
}

}
