// basis.cpp: Enumeration and indexing of truncated HTC configuration bases

#include "htc/basis.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "htc/error.hpp"

namespace htc {

unsigned total_quanta(const VibConfig& vib)
{
    unsigned sum = 0;
    for (const auto& [site, q] : vib) {
        sum += q;
    }
    return sum;
}

unsigned quanta_on(const VibConfig& vib, std::uint16_t molecule)
{
    for (const auto& [site, q] : vib) {
        if (site == molecule) {
            return q;
        }
    }
    return 0;
}

VibConfig shifted(const VibConfig& vib, std::uint16_t molecule, int delta)
{
    VibConfig out;
    out.reserve(vib.size() + 1);
    bool placed = false;
    for (const auto& [site, q] : vib) {
        if (!placed && site >= molecule) {
            placed = true;
            const int base = site == molecule ? q : 0;
            const int now = base + delta;
            if (now < 0) {
                throw std::out_of_range("shifted: negative vibrational quanta");
            }
            if (now > 0) {
                out.emplace_back(molecule, static_cast<std::uint16_t>(now));
            }
            if (site == molecule) {
                continue;
            }
        }
        out.emplace_back(site, q);
    }
    if (!placed) {
        if (delta < 0) {
            throw std::out_of_range("shifted: negative vibrational quanta");
        }
        if (delta > 0) {
            out.emplace_back(molecule, static_cast<std::uint16_t>(delta));
        }
    }
    return out;
}

unsigned BasisState::spectators() const
{
    unsigned count = 0;
    for (const auto& [site, q] : vib) {
        if (!excited_site || site != *excited_site) {
            ++count;
        }
    }
    return count;
}

bool operator<(const BasisState& a, const BasisState& b)
{
    return std::tie(a.photon, a.excited_site, a.vib) < std::tie(b.photon, b.excited_site, b.vib);
}

void validate_truncation(const TruncationParams& t, int n_molecules)
{
    if (n_molecules < 1) {
        throw ParamError("n_molecules must be ≥ 1");
    }
    if (t.spectators > static_cast<unsigned>(n_molecules - 1)) {
        throw ParamError("truncation.spectators must be ≤ n_molecules - 1");
    }
    if (t.max_states == 0) {
        throw ParamError("truncation.max_states must be positive");
    }
    if (n_molecules > 65535) {
        throw ParamError("n_molecules must fit in 16 bits");
    }
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t value)
{
    for (int byte = 0; byte < 8; ++byte) {
        h ^= (value >> (8 * byte)) & 0xffu;
        h *= 1099511628211ull;
    }
    return h;
}

// Visits every VibConfig over molecules [first, n) (skipping `exclude`) with at most
// `max_sites` vibrating molecules and at most `budget` quanta in total.
void for_each_config(int n, int exclude, unsigned max_sites, unsigned budget,
                     const std::function<void(const VibConfig&)>& visit)
{
    VibConfig current;
    std::function<void(int, unsigned, unsigned)> recurse = [&](int from, unsigned sites, unsigned left) {
        visit(current);
        if (sites == max_sites || left == 0) {
            return;
        }
        for (int m = from; m < n; ++m) {
            if (m == exclude) {
                continue;
            }
            for (unsigned q = 1; q <= left; ++q) {
                current.emplace_back(static_cast<std::uint16_t>(m), static_cast<std::uint16_t>(q));
                recurse(m + 1, sites + 1, left - q);
                current.pop_back();
            }
        }
    };
    recurse(0, 0, budget);
}

std::string cap_message(Manifold manifold, int n, const TruncationParams& t)
{
    std::ostringstream os;
    os << "basis catalog for the " << (manifold == Manifold::ground ? "ground" : "one-excitation")
       << " manifold exceeds max_states=" << t.max_states << " (n_molecules=" << n
       << ", total_quanta=" << t.total_quanta << ", spectators=" << t.spectators << ")";
    return os.str();
}

} // namespace

BasisCatalog::BasisCatalog(Manifold manifold, int n_molecules, TruncationParams truncation,
                           std::vector<BasisState> states)
    : manifold_(manifold)
    , n_molecules_(n_molecules)
    , truncation_(truncation)
    , states_(std::move(states))
{
    std::sort(states_.begin(), states_.end());
    if (std::adjacent_find(states_.begin(), states_.end()) != states_.end()) {
        throw std::logic_error("BasisCatalog: duplicate states");
    }
    std::uint64_t h = 1469598103934665603ull;
    h = fnv1a(h, static_cast<std::uint64_t>(manifold_));
    h = fnv1a(h, static_cast<std::uint64_t>(n_molecules_));
    for (const auto& s : states_) {
        h = fnv1a(h, s.photon);
        h = fnv1a(h, s.excited_site ? *s.excited_site + 1u : 0u);
        for (const auto& [site, q] : s.vib) {
            h = fnv1a(h, (static_cast<std::uint64_t>(site) << 16) | q);
        }
        h = fnv1a(h, 0xffffffffull);
    }
    id_ = h;
}

std::optional<std::size_t> BasisCatalog::find(const BasisState& s) const
{
    const auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || !(*it == s)) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - states_.begin());
}

std::size_t BasisCatalog::index(const BasisState& s) const
{
    const auto pos = find(s);
    if (!pos) {
        throw std::out_of_range("BasisCatalog::index: state not in catalog: " + to_string(s));
    }
    return *pos;
}

bool BasisCatalog::admits(const BasisState& s) const
{
    for (const auto& [site, q] : s.vib) {
        if (site >= n_molecules_ || q == 0) {
            return false;
        }
    }
    if (s.excited_site && *s.excited_site >= n_molecules_) {
        return false;
    }
    if (total_quanta(s.vib) > truncation_.total_quanta) {
        return false;
    }
    if (manifold_ == Manifold::ground) {
        return s.excitation_number() == 0 && s.vib.size() <= truncation_.spectators + 1;
    }
    if (s.excitation_number() != 1 || s.photon > 1) {
        return false;
    }
    if (s.photon == 1) {
        return s.vib.size() <= photon_vibrating_molecules(truncation_, n_molecules_);
    }
    return s.spectators() <= truncation_.spectators;
}

unsigned photon_vibrating_molecules(const TruncationParams& t, int n_molecules)
{
    return t.spectators + 1 == static_cast<unsigned>(n_molecules) ? t.spectators + 1 : t.spectators;
}

BasisCatalog enumerate(Manifold manifold, int n_molecules, const TruncationParams& t)
{
    validate_truncation(t, n_molecules);
    std::vector<BasisState> states;
    auto push = [&](BasisState s) {
        if (states.size() >= t.max_states) {
            throw TruncationError(cap_message(manifold, n_molecules, t));
        }
        states.push_back(std::move(s));
    };

    const unsigned budget = t.total_quanta;
    if (manifold == Manifold::ground) {
        for_each_config(n_molecules, -1, t.spectators + 1, budget, [&](const VibConfig& v) {
            push(BasisState{std::nullopt, 0, v});
        });
    } else {
        for_each_config(n_molecules, -1, photon_vibrating_molecules(t, n_molecules), budget, [&](const VibConfig& v) {
            push(BasisState{std::nullopt, 1, v});
        });
        for (int n = 0; n < n_molecules; ++n) {
            const auto site = static_cast<std::uint16_t>(n);
            for (unsigned own = 0; own <= budget; ++own) {
                for_each_config(n_molecules, n, t.spectators, budget - own, [&](const VibConfig& v) {
                    push(BasisState{site, 0, own > 0 ? shifted(v, site, static_cast<int>(own)) : v});
                });
            }
        }
    }
    return BasisCatalog(manifold, n_molecules, t, std::move(states));
}

std::optional<BasisState> leakage_partner(const BasisState& s)
{
    if (s.photon == 0) {
        return std::nullopt;
    }
    BasisState out = s;
    out.photon = static_cast<std::uint8_t>(s.photon - 1);
    return out;
}

BasisState permuted(const BasisState& s, std::span<const std::uint16_t> perm)
{
    BasisState out;
    out.photon = s.photon;
    if (s.excited_site) {
        out.excited_site = perm[*s.excited_site];
    }
    out.vib.reserve(s.vib.size());
    for (const auto& [site, q] : s.vib) {
        out.vib.emplace_back(perm[site], q);
    }
    std::sort(out.vib.begin(), out.vib.end());
    return out;
}

std::string to_string(const BasisState& s)
{
    std::ostringstream os;
    os << "photon=" << int(s.photon) << " excited=";
    if (s.excited_site) {
        os << *s.excited_site;
    } else {
        os << '-';
    }
    os << " vib={";
    for (std::size_t k = 0; k < s.vib.size(); ++k) {
        os << (k ? "," : "") << s.vib[k].first << ':' << s.vib[k].second;
    }
    os << '}';
    return os.str();
}

void dump_catalog(std::ostream& os, const BasisCatalog& catalog)
{
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        os << i << '\t' << to_string(catalog[i]) << '\n';
    }
}

} // namespace htc
