#include <doctest.h>

#include <cmath>

#include "htc/analysis.hpp"
#include "htc/observables.hpp"
#include "htc/pipeline.hpp"
#include "support.hpp"

using namespace htc;

namespace {

// Sum of `values` over each cluster of equal energies.
Eigen::VectorXd level_sums(const Eigen::VectorXd& energies, const Eigen::VectorXd& values, double tol)
{
    const auto levels = degeneracy_census(energies, tol);
    Eigen::VectorXd out(static_cast<Eigen::Index>(levels.size()));
    for (std::size_t k = 0; k < levels.size(); ++k) {
        out(static_cast<Eigen::Index>(k)) =
            values.segment(levels[k].first, static_cast<Eigen::Index>(levels[k].multiplicity)).sum();
    }
    return out;
}

TruncationParams small_truncation(const ModelParams& p) { return TruncationParams{3, p.n_molecules > 1 ? 1u : 0u}; }

} // namespace

TEST_SUITE("observables") {

TEST_CASE("the collective dipole does not act on photon states")
{
    const auto c = enumerate(Manifold::one_excitation, 3, TruncationParams{2, 1});
    const auto g = enumerate(Manifold::ground, 3, TruncationParams{2, 1});
    const Eigen::SparseMatrix<double> jm = collective_dipole_operator(c, g);
    const Eigen::SparseMatrix<double> a = annihilation_operator(c, g);
    for (std::size_t j = 0; j < c.size(); ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        if (c[j].photon) {
            CHECK(Eigen::VectorXd(jm.col(col)).cwiseAbs().sum() == 0.0);
            CHECK(Eigen::VectorXd(a.col(col)).sum() == 1.0);
        } else {
            CHECK(Eigen::VectorXd(a.col(col)).cwiseAbs().sum() == 0.0);
        }
    }
}

TEST_CASE("rates and weights stay in range; sum rules hold")
{
    testing::Rng rng(51);
    for (int trial = 0; trial < 12; ++trial) {
        const ModelParams p = testing::random_model(rng, 3);
        const Solution s = solve(p, small_truncation(p));
        const TransitionTable& t = s.table;
        CHECK(t.gamma.minCoeff() >= 0.0);
        CHECK(t.photon_weight.minCoeff() >= -1e-15);
        CHECK(t.photon_weight.maxCoeff() <= 1.0 + 1e-12);
        CHECK(t.leakage_shortfall() < 1e-12);

        const Eigen::VectorXd column = t.a_elements.colwise().squaredNorm().transpose();
        CHECK(testing::max_abs_diff(column, t.photon_weight) < 1e-12);

        long photon_states = 0;
        for (const auto& st : s.excited_catalog.states()) {
            photon_states += st.photon;
        }
        CHECK(t.photon_weight.sum() == doctest::Approx(static_cast<double>(photon_states)).epsilon(1e-12));

        const Eigen::VectorXd gamma = decay_rates(t.a_elements, t.jm_elements, p);
        CHECK(testing::max_abs_diff(gamma, t.gamma) < 1e-12);
        const Eigen::VectorXd expected = p.kappa * column +
            p.n_molecules * p.gamma0 * t.jm_elements.colwise().squaredNorm().transpose();
        CHECK(testing::max_abs_diff(expected, t.gamma) < 1e-12);
    }
}

TEST_CASE("level-summed rates do not depend on the degenerate gauge")
{
    testing::Rng rng(52);
    for (int trial = 0; trial < 6; ++trial) {
        const ModelParams p = ModelParams::resonant(rng.integer(3, 5), rng.uniform(0.3, 2.0), 0.5, 0.4, 0.7);
        const TruncationParams t{3, 1};
        const auto ec = enumerate(Manifold::one_excitation, p.n_molecules, t);
        const auto gc = enumerate(Manifold::ground, p.n_molecules, t);
        const EigenSystem ground = diagonal_eigensystem(assemble_ground(gc, p), gc.id());
        const auto a_op = annihilation_operator(ec, gc);
        const auto jm_op = collective_dipole_operator(ec, gc);

        EigenSystem es = eigh(assemble(ec, p), ec.id());
        EigenSystem mixed = es;
        testing::remix_degenerate(mixed, 1e-8, rng);

        auto rates = [&](const EigenSystem& e) {
            const Eigen::MatrixXd a = contract(a_op, e, ground);
            const Eigen::MatrixXd jm = contract(jm_op, e, ground);
            return std::pair{decay_rates(a, jm, p), Eigen::VectorXd(a.colwise().squaredNorm().transpose())};
        };
        const auto [g0, w0] = rates(es);
        const auto [g1, w1] = rates(mixed);
        CHECK(testing::max_abs_diff(level_sums(es.values, g0, 1e-8), level_sums(es.values, g1, 1e-8)) < 1e-10);
        CHECK(testing::max_abs_diff(level_sums(es.values, w0, 1e-8), level_sums(es.values, w1, 1e-8)) < 1e-10);

        TransitionTable before = build_transitions(ec, es, gc, ground, p);
        TransitionTable after = build_transitions(ec, mixed, gc, ground, p);
        CHECK(testing::max_abs_diff(before.gamma, after.gamma) < 1e-9);
        for (const auto& level : degeneracy_census(before.excited_energies, 1e-8)) {
            const auto m = static_cast<Eigen::Index>(level.multiplicity);
            const Eigen::VectorXd x = before.a_elements.middleCols(level.first, m).cwiseAbs2().rowwise().sum();
            const Eigen::VectorXd y = after.a_elements.middleCols(level.first, m).cwiseAbs2().rowwise().sum();
            CHECK(testing::max_abs_diff(x, y) < 1e-10);
        }
    }
}

TEST_CASE("without vibronic coupling replicas inherit the parent decay rate")
{
    // Only truncations that keep every vibrational configuration whole factorise exactly.
    for (const auto& [n, spectators] : {std::pair{2, 1u}, std::pair{3, 2u}}) {
        const ModelParams p = ModelParams::resonant(n, 0.7, 0.0, 0.6, 0.4);
        const Solution s = solve(p, TruncationParams{3, spectators});
        const auto base = solve(p, TruncationParams{0, 0});
        REQUIRE(base.table.n_excited() == n + 1);
        for (Eigen::Index j = 0; j < s.table.n_excited(); ++j) {
            double best = INFINITY;
            for (Eigen::Index b = 0; b < base.table.n_excited(); ++b) {
                const double m = s.table.excited_energies(j) - base.table.excited_energies(b);
                if (std::abs(m - std::round(m)) < 1e-9) {
                    best = std::min(best, std::abs(s.table.gamma(j) - base.table.gamma(b)));
                }
            }
            CHECK(best < 1e-10);
        }
        CHECK(base.table.gamma(0) == doctest::Approx(0.5 * p.kappa + 0.5 * p.n_molecules * p.gamma0));
    }
}

}
