// symmetry.cpp: Symmetry-adapted blocks for one vibrating spectator
//
// With g = Omega/2 the one-excitation configurations split into permutation families
// (fixed quanta labels, molecule indices free):
//   Ph0             |G;1_c>                                        (1 state)
//   Ph1(b)          photon, molecule m carries b >= 1 quanta       (N states)
//   Ph2(a,b)        photon, molecules n, m carry a, b >= 1 quanta  (N(N-1), or N(N-1)/2 if a = b)
//   E(nu_e)         molecule n excited with nu_e quanta            (N states)
//   Pair(nu_e,b)    n excited with nu_e, spectator m != n with b   (N(N-1) states)
// The ordered pairs (n,m) span trivial + 2 standard + [N-2,2] + [N-2,1,1]. The swap
// S|n,m> = |m,n> acts as +1 on trivial and [N-2,2] and as -1 on [N-2,1,1].
//
// Light-matter couplings between families:
//   Ph0 -> E(n;0)                     for every n
//   Ph1(m;b) -> E(m;b) + Sum_{n!=m} Pair(n,0; m,b)
//   Ph2(n,a; m,b) -> Pair(n,a; m,b) + Pair(m,b; n,a)
// so a photon pair vector x couples to Pair(a,b) along x and to Pair(b,a) along S x.
// For a = b the unordered photon pair built from a symmetric x couples with sqrt(2) g.
//
// Symmetric block (unit-normalized equal-amplitude sums):
//   Ph0 -> g sqrt(N) E_s(0)
//   Ph1_s(b) -> g E_s(b) + g sqrt(N-1) Pair_s(0,b)
//
// Standard block: pick c with Sum c_n = 0, |c| = 1 and
//   Ph1_c(b) = Sum c_m Ph1(m,b),  E_c = Sum c_n E(n),
//   U = (N-1)^{-1/2} Sum_{n!=m} c_n |n,m>,  W = (N-1)^{-1/2} Sum_{n!=m} c_m |n,m>,
// with <U|W> = -1/(N-1) and S U = W. The swap eigenvectors
//   u+ = (U+W) / sqrt(2(N-2)/(N-1)),   u- = (U-W) / sqrt(2N/(N-1))
// are orthonormal, and W = sqrt((N-2)/(2(N-1))) u+ - sqrt(N/(2(N-1))) u-. Hence
//   Ph1_c(b) -> g E_c(b) + g sqrt((N-2)/2) Pair_u+(0,b) - g sqrt(N/2) Pair_u-(0,b).
// For N = 2, U = -W and only u- exists.
//
// Photon states carry at most P vibrating molecules, or P + 1 when P = N - 1, so Ph1
// needs P = 1 or N = 1 and Ph2 needs N = 2.
//
// The [N-2,2] and [N-2,1,1] blocks hold only pair configurations: photon pairs and
// excited pairs, coupled along one swap-parity direction.
//
// Vibronic raising acts inside each family on nu_e with lambda sqrt(nu_e+1).

#include "htc/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "htc/error.hpp"

namespace htc {

namespace {

class BlockBuilder {
public:
    Eigen::Index add(std::string label, double diagonal, bool photon)
    {
        labels_.push_back(std::move(label));
        diagonal_.push_back(diagonal);
        photon_.push_back(photon ? 1.0 : 0.0);
        return static_cast<Eigen::Index>(labels_.size() - 1);
    }

    void couple(Eigen::Index a, Eigen::Index b, double value)
    {
        if (value != 0.0) {
            couplings_.push_back({a, b, value});
        }
    }

    SymmetryBlock finish(BlockKind kind, long multiplicity)
    {
        SymmetryBlock b{kind, multiplicity, SymmetricMatrix(labels_.size()), labels_, {}, -1};
        for (std::size_t i = 0; i < diagonal_.size(); ++i) {
            if (diagonal_[i] != 0.0) {
                b.matrix.add(i, i, diagonal_[i]);
            }
        }
        for (const auto& c : couplings_) {
            b.matrix.add(static_cast<std::size_t>(c.a), static_cast<std::size_t>(c.b), c.value);
        }
        b.photon_mask = Eigen::Map<const Eigen::VectorXd>(photon_.data(), static_cast<Eigen::Index>(photon_.size()));
        return b;
    }

private:
    struct Coupling {
        Eigen::Index a, b;
        double value;
    };
    std::vector<std::string> labels_;
    std::vector<double> diagonal_;
    std::vector<double> photon_;
    std::vector<Coupling> couplings_;
};

std::string label(const char* family, int first, int second = -1)
{
    std::string s = family;
    s += '(' + std::to_string(first);
    if (second >= 0) {
        s += ',' + std::to_string(second);
    }
    return s + ')';
}

struct Energies {
    double photon;    // cavity photon, no vibrations
    double excited;   // vertical electronic excitation, no vibrations
    double wv;
    double lambda;
    double g;
};

// Vibronic chain E(nu_e) for nu_e = 0..top on the excited molecule, each row index
// returned in order.
std::vector<Eigen::Index> chain(BlockBuilder& b, const char* family, int spectator_quanta, unsigned top,
                                const Energies& e)
{
    std::vector<Eigen::Index> rows;
    for (unsigned ne = 0; ne <= top; ++ne) {
        const int shown = static_cast<int>(ne);
        rows.push_back(b.add(spectator_quanta > 0 ? label(family, shown, spectator_quanta) : label(family, shown),
                             e.excited + e.wv * (ne + spectator_quanta), false));
        if (ne > 0) {
            b.couple(rows[ne - 1], rows[ne], e.wv * e.lambda * std::sqrt(static_cast<double>(ne)));
        }
    }
    return rows;
}


// One direction in the ordered-pair space with its swap parity, and the coupling of the
// single-vibration photon family to its vibrationless pair chain.
struct PairDirection {
    const char* name;
    int parity;
    double photon_coupling;
};

// Adds Pair(nu_e, b) chains and Ph2(a, b) photon pairs along one pair direction.
void add_pairs(BlockBuilder& b, const PairDirection& d, unsigned vmax, const Energies& e,
               const std::vector<Eigen::Index>& single_photons, bool photon_pairs)
{
    std::vector<std::vector<Eigen::Index>> pairs(vmax + 1);
    const std::string pair_name = std::string("Pair") + d.name;
    for (unsigned nu = 1; nu <= vmax; ++nu) {
        pairs[nu] = chain(b, pair_name.c_str(), static_cast<int>(nu), vmax - nu, e);
        if (!single_photons.empty()) {
            b.couple(single_photons[nu - 1], pairs[nu][0], e.g * d.photon_coupling);
        }
    }
    if (!photon_pairs) {
        return;
    }
    const std::string photon_name = std::string("Ph2") + d.name;
    for (unsigned a = 1; 2 * a <= vmax; ++a) {
        for (unsigned c = a; a + c <= vmax; ++c) {
            if (a == c && d.parity < 0) {
                continue;
            }
            const auto ph = b.add(label(photon_name.c_str(), static_cast<int>(a), static_cast<int>(c)),
                                  e.photon + e.wv * (a + c), true);
            if (a == c) {
                b.couple(ph, pairs[a][a], e.g * std::numbers::sqrt2);
            } else {
                b.couple(ph, pairs[c][a], e.g);
                b.couple(ph, pairs[a][c], e.g * d.parity);
            }
        }
    }
}

} // namespace

bool symmetry_supported(const TruncationParams& t) { return t.spectators <= 1; }

std::vector<SymmetryBlock> build_symmetric_blocks(const ModelParams& p, const TruncationParams& t,
                                                  double omega_c_k)
{
    validate_truncation(t, p.n_molecules);
    if (!symmetry_supported(t)) {
        throw ParamError("symmetry blocks support truncation.spectators <= 1 only");
    }
    const int n = p.n_molecules;
    const double nd = static_cast<double>(n);
    const unsigned vmax = t.total_quanta;
    const bool pairs = t.spectators == 1;
    const unsigned photon_sites = photon_vibrating_molecules(t, n);
    const Energies e{omega_c_k - p.cavity_freq_normal, p.omega_e() - p.cavity_freq_normal, p.vib_freq,
                     p.lambda(), 0.5 * p.rabi_single};

    // Photon with one vibrating molecule, the excited-molecule chain and pair directions.
    auto single_molecule_block = [&](BlockBuilder& b, bool vacuum, double vacuum_coupling,
                                     const std::vector<PairDirection>& directions) {
        Eigen::Index vac = -1;
        if (vacuum) {
            vac = b.add("Ph0", e.photon, true);
        }
        const auto excitons = chain(b, "E", 0, vmax, e);
        if (vacuum) {
            b.couple(vac, excitons[0], e.g * vacuum_coupling);
        }
        std::vector<Eigen::Index> photons;
        for (unsigned nu = 1; nu <= vmax && photon_sites >= 1; ++nu) {
            photons.push_back(b.add(label("Ph1", static_cast<int>(nu)), e.photon + e.wv * nu, true));
            b.couple(photons.back(), excitons[nu], e.g);
        }
        if (pairs) {
            for (const auto& d : directions) {
                add_pairs(b, d, vmax, e, photons, photon_sites >= 2);
            }
        }
        return vac;
    };

    std::vector<SymmetryBlock> blocks;
    {
        BlockBuilder b;
        std::vector<PairDirection> dirs;
        if (n >= 2) {
            dirs.push_back({"", 1, std::sqrt(nd - 1.0)});
        }
        const auto vac = single_molecule_block(b, true, std::sqrt(nd), dirs);
        auto block = b.finish(BlockKind::symmetric, 1);
        block.vacuum_photon = vac;
        blocks.push_back(std::move(block));
    }
    if (n == 1) {
        return blocks;
    }
    {
        BlockBuilder b;
        std::vector<PairDirection> dirs;
        if (n >= 3) {
            dirs.push_back({"+", 1, std::sqrt((nd - 2.0) / 2.0)});
        }
        dirs.push_back({"-", -1, -std::sqrt(nd / 2.0)});
        single_molecule_block(b, false, 0.0, dirs);
        blocks.push_back(b.finish(BlockKind::standard, n - 1));
    }
    if (!pairs) {
        return blocks;
    }
    const std::vector<Eigen::Index> none;
    if (n >= 4) {
        BlockBuilder b;
        add_pairs(b, {"", 1, 0.0}, vmax, e, none, photon_sites >= 2);
        blocks.push_back(b.finish(BlockKind::pair_symmetric, static_cast<long>(n) * (n - 3) / 2));
    }
    if (n >= 3) {
        BlockBuilder b;
        add_pairs(b, {"", -1, 0.0}, vmax, e, none, photon_sites >= 2);
        blocks.push_back(b.finish(BlockKind::pair_antisymmetric, static_cast<long>(n - 1) * (n - 2) / 2));
    }
    return blocks;
}

std::vector<SymmetryBlock> build_symmetric_blocks(const ModelParams& p, const TruncationParams& t)
{
    return build_symmetric_blocks(p, t, p.cavity_freq_normal);
}

BlockSpectrum merged_spectrum(const std::vector<SymmetryBlock>& blocks)
{
    std::vector<std::pair<double, double>> rows;
    for (const auto& block : blocks) {
        const EigenSystem es = eigh(block.matrix);
        const Eigen::VectorXd weight = (es.vectors.array().square().colwise() * block.photon_mask.array())
                                           .colwise()
                                           .sum()
                                           .transpose();
        for (Eigen::Index j = 0; j < es.size(); ++j) {
            rows.insert(rows.end(), static_cast<std::size_t>(block.multiplicity), {es.values(j), weight(j)});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    BlockSpectrum out;
    out.values.resize(static_cast<Eigen::Index>(rows.size()));
    out.photon_weight.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        out.values(static_cast<Eigen::Index>(k)) = rows[k].first;
        out.photon_weight(static_cast<Eigen::Index>(k)) = rows[k].second;
    }
    return out;
}

} // namespace htc
