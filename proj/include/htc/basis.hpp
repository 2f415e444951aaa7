// basis.hpp: Truncated configuration bases of the ground and one-excitation manifolds

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "htc/model.hpp"

namespace htc {

/// Sorted (molecule, quanta) pairs with quanta >= 1; absent molecules carry zero quanta.
/// Quanta are counted in the undisplaced (ground-potential) number basis for every
/// molecule, including an electronically excited one.
using VibConfig = std::vector<std::pair<std::uint16_t, std::uint16_t>>;

unsigned total_quanta(const VibConfig& vib);
unsigned quanta_on(const VibConfig& vib, std::uint16_t molecule);
/// Returns a copy with `delta` added to the quanta of `molecule` (entries reaching zero are dropped).
VibConfig shifted(const VibConfig& vib, std::uint16_t molecule, int delta);

struct BasisState {
    std::optional<std::uint16_t> excited_site;
    std::uint8_t photon{0};
    VibConfig vib;

    int excitation_number() const { return photon + (excited_site ? 1 : 0); }
    /// Vibrating molecules other than the electronically excited one.
    unsigned spectators() const;

    friend bool operator==(const BasisState&, const BasisState&) = default;
    /// Lexicographic on (photon, excited_site with "none" first, vib pairs).
    friend bool operator<(const BasisState& a, const BasisState& b);
};

struct TruncationParams {
    unsigned total_quanta{4};     // V_max: bound on the summed vibrational quanta
    unsigned spectators{1};       // P: vibrating molecules besides the excited one
    std::size_t max_states{200000};
};

/// Throws ParamError unless the truncation is compatible with the molecule count.
void validate_truncation(const TruncationParams& t, int n_molecules);

enum class Manifold { ground, one_excitation };

class BasisCatalog {
public:
    BasisCatalog(Manifold manifold, int n_molecules, TruncationParams truncation,
                 std::vector<BasisState> states);

    Manifold manifold() const { return manifold_; }
    int n_molecules() const { return n_molecules_; }
    const TruncationParams& truncation() const { return truncation_; }
    std::size_t size() const { return states_.size(); }
    const BasisState& operator[](std::size_t i) const { return states_[i]; }
    std::span<const BasisState> states() const { return states_; }

    /// Position of `s` in the catalog, or nullopt when it lies outside the truncation.
    std::optional<std::size_t> find(const BasisState& s) const;
    /// Like find() but throws std::out_of_range for absent states.
    std::size_t index(const BasisState& s) const;
    /// Content fingerprint (FNV-1a over the ordered states); identifies eigen-systems.
    std::uint64_t id() const { return id_; }

    /// True when `s` satisfies this catalog's manifold and truncation rules.
    bool admits(const BasisState& s) const;

private:
    Manifold manifold_;
    int n_molecules_;
    TruncationParams truncation_;
    std::vector<BasisState> states_;
    std::uint64_t id_{0};
};

/// Most vibrating molecules a photon state may carry: t.spectators, or every molecule
/// when t.spectators = n_molecules - 1. Either way each admitted photon state keeps all
/// of its light-matter partners inside the excited-state truncation.
unsigned photon_vibrating_molecules(const TruncationParams& t, int n_molecules);

/// All states of the manifold allowed by the truncation, in catalog order.
/// An electronically excited state may carry up to t.spectators vibrating molecules
/// besides the excited one; photon states follow photon_vibrating_molecules(). Ground
/// states may carry up to t.spectators + 1, so the leakage and dipole final state of every
/// one-excitation configuration is present.
/// Throws TruncationError when the count exceeds t.max_states.
BasisCatalog enumerate(Manifold manifold, int n_molecules, const TruncationParams& t);

/// Ground-manifold state reached by removing the cavity photon, or nullopt if s has none.
std::optional<BasisState> leakage_partner(const BasisState& s);

/// Relabels molecules: molecule n becomes perm[n].
BasisState permuted(const BasisState& s, std::span<const std::uint16_t> perm);

std::string to_string(const BasisState& s);
/// One state per line: "index<TAB>state".
void dump_catalog(std::ostream& os, const BasisCatalog& catalog);

} // namespace htc
