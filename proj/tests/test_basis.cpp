#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "htc/basis.hpp"
#include "htc/error.hpp"
#include "htc/hamiltonian.hpp"
#include "support.hpp"

using namespace htc;

namespace {

BasisState photon(VibConfig vib = {}) { return BasisState{std::nullopt, 1, std::move(vib)}; }
BasisState excited(std::uint16_t site, VibConfig vib = {}) { return BasisState{site, 0, std::move(vib)}; }

std::set<std::string> labels(const BasisCatalog& c)
{
    std::set<std::string> out;
    for (const auto& s : c.states()) {
        out.insert(to_string(s));
    }
    return out;
}

} // namespace

TEST_SUITE("basis") {

TEST_CASE("hand-enumerated two-molecule catalog")
{
    // A single quantum fits on a spectator too, so both excited-plus-spectator states appear.
    const auto c = enumerate(Manifold::one_excitation, 2, TruncationParams{1, 1});
    const std::set<std::string> expected = {
        to_string(photon()),           to_string(photon({{0, 1}})), to_string(photon({{1, 1}})),
        to_string(excited(0)),         to_string(excited(0, {{0, 1}})), to_string(excited(0, {{1, 1}})),
        to_string(excited(1)),         to_string(excited(1, {{1, 1}})), to_string(excited(1, {{0, 1}})),
    };
    CHECK(c.size() == 9);
    CHECK(labels(c) == expected);
}

TEST_CASE("single molecule keeps a dressed photon state")
{
    // The photon manifold admits one vibrating molecule more than the excited manifold,
    // so the single-molecule catalog has four states rather than three.
    const auto c = enumerate(Manifold::one_excitation, 1, TruncationParams{1, 0});
    const std::set<std::string> expected = {
        to_string(photon()), to_string(photon({{0, 1}})), to_string(excited(0)), to_string(excited(0, {{0, 1}})),
    };
    CHECK(labels(c) == expected);
}

TEST_CASE("default truncation at ten molecules is pinned")
{
    const TruncationParams t{4, 1};
    const auto a = enumerate(Manifold::one_excitation, 10, t);
    const auto b = enumerate(Manifold::one_excitation, 10, t);
    CHECK(a.size() == 991);
    CHECK(enumerate(Manifold::ground, 10, t).size() == 311);
    CHECK(a.id() == b.id());
}

TEST_CASE("catalog invariants on random truncations")
{
    testing::Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.integer(1, 5);
        TruncationParams t;
        t.total_quanta = static_cast<unsigned>(rng.integer(0, 4));
        t.spectators = static_cast<unsigned>(rng.integer(0, std::min(2, n - 1)));
        CAPTURE(n);
        CAPTURE(t.total_quanta);
        CAPTURE(t.spectators);

        const auto c = enumerate(Manifold::one_excitation, n, t);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const auto& s = c[i];
            CHECK(c.index(s) == i);
            CHECK(s.excitation_number() == 1);
            CHECK(total_quanta(s.vib) <= t.total_quanta);
            if (s.photon) {
                CHECK(!s.excited_site);
                CHECK(s.vib.size() <= photon_vibrating_molecules(t, n));
            } else {
                CHECK(s.spectators() <= t.spectators);
            }
            if (i > 0) {
                CHECK(c[i - 1] < s);
            }
        }

        const auto g = enumerate(Manifold::ground, n, t);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(g[i].excitation_number() == 0);
            CHECK(g[i].vib.size() <= t.spectators + 1);
            CHECK(g.index(g[i]) == i);
        }
        for (const auto& s : c.states()) {
            if (const auto partner = leakage_partner(s)) {
                CHECK(g.find(*partner).has_value());
            }
        }
    }
}

TEST_CASE("relabelling molecules maps the catalog onto itself")
{
    testing::Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.integer(2, 6);
        const TruncationParams t{static_cast<unsigned>(rng.integer(1, 4)), 1};
        const auto c = enumerate(Manifold::one_excitation, n, t);
        const auto perm = rng.permutation(n);
        std::vector<BasisState> image;
        for (const auto& s : c.states()) {
            const auto moved = permuted(s, perm);
            CHECK(c.find(moved).has_value());
            image.push_back(moved);
        }
        std::sort(image.begin(), image.end());
        CHECK(std::adjacent_find(image.begin(), image.end()) == image.end());
        CHECK(image.size() == c.size());
    }
}

TEST_CASE("photon states keep their light-matter partners")
{
    CHECK(photon_vibrating_molecules(TruncationParams{4, 1}, 10) == 1);
    CHECK(photon_vibrating_molecules(TruncationParams{4, 1}, 2) == 2);
    CHECK(photon_vibrating_molecules(TruncationParams{4, 0}, 1) == 1);
    CHECK(photon_vibrating_molecules(TruncationParams{4, 0}, 3) == 0);

    testing::Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.integer(1, 5);
        const TruncationParams t{static_cast<unsigned>(rng.integer(0, 4)), static_cast<unsigned>(rng.integer(0, std::min(2, n - 1)))};
        const auto c = enumerate(Manifold::one_excitation, n, t);
        for (const auto& s : c.states()) {
            if (!s.photon) {
                continue;
            }
            for (int m = 0; m < n; ++m) {
                CHECK(c.find(BasisState{static_cast<std::uint16_t>(m), 0, s.vib}).has_value());
            }
        }
    }
}

TEST_CASE("leakage partners")
{
    CHECK(leakage_partner(photon()) == BasisState{});
    CHECK(leakage_partner(photon({{2, 2}})) == BasisState{std::nullopt, 0, {{2, 2}}});
    CHECK_FALSE(leakage_partner(excited(0, {{0, 1}})).has_value());
}

TEST_CASE("ground manifold energies are the vibrational quanta")
{
    ModelParams p = ModelParams::resonant(4, 1.0, 0.5);
    const auto g = enumerate(Manifold::ground, 4, TruncationParams{4, 2});
    const Eigen::VectorXd e = assemble_ground(g, p);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(e(static_cast<Eigen::Index>(i)) - total_quanta(g[i].vib)) < 1e-14);
    }
    CHECK(e(static_cast<Eigen::Index>(g.index(BasisState{}))) == 0.0);
    CHECK(e(static_cast<Eigen::Index>(g.index(BasisState{std::nullopt, 0, {{2, 2}}}))) == doctest::Approx(2.0));
    CHECK(e(static_cast<Eigen::Index>(g.index(BasisState{std::nullopt, 0, {{0, 1}, {1, 1}}}))) == doctest::Approx(2.0));
}

TEST_CASE("oversized catalogs are refused with the offending truncation")
{
    TruncationParams t{4, 1};
    t.max_states = 100;
    try {
        enumerate(Manifold::one_excitation, 10, t);
        FAIL("expected a truncation error");
    } catch (const TruncationError& e) {
        const std::string what = e.what();
        CHECK(what.find("total_quanta=4") != std::string::npos);
        CHECK(what.find("spectators=1") != std::string::npos);
    }
    CHECK_THROWS(validate_truncation(TruncationParams{2, 3}, 3));
}

TEST_CASE("catalog dump lists every state once")
{
    const auto c = enumerate(Manifold::one_excitation, 2, TruncationParams{1, 1});
    std::ostringstream os;
    dump_catalog(os, c);
    const std::string text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') >= static_cast<long>(c.size()));
}

}
