// hamiltonian.cpp: Matrix elements of the HTC Hamiltonian in the undisplaced configuration basis

#include "htc/hamiltonian.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "htc/error.hpp"

namespace htc {

void SymmetricMatrix::add(std::size_t row, std::size_t col, double value)
{
    if (row >= dimension_ || col >= dimension_) {
        throw std::out_of_range("SymmetricMatrix::add: index out of range");
    }
    if (!std::isfinite(value)) {
        throw NumericalError("SymmetricMatrix::add: non-finite matrix element");
    }
    if (row < col) {
        std::swap(row, col);
    }
    entries_.emplace_back(static_cast<int>(row), static_cast<int>(col), value);
}

Eigen::MatrixXd SymmetricMatrix::dense() const
{
    const auto n = static_cast<Eigen::Index>(dimension_);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : entries_) {
        m(t.row(), t.col()) += t.value();
        if (t.row() != t.col()) {
            m(t.col(), t.row()) += t.value();
        }
    }
    return m;
}

Eigen::SparseMatrix<double> SymmetricMatrix::sparse() const
{
    std::vector<Eigen::Triplet<double>> full;
    full.reserve(2 * entries_.size());
    for (const auto& t : entries_) {
        full.push_back(t);
        if (t.row() != t.col()) {
            full.emplace_back(t.col(), t.row(), t.value());
        }
    }
    const auto n = static_cast<Eigen::Index>(dimension_);
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(full.begin(), full.end());
    return m;
}

void dump_matrix(std::ostream& os, const SymmetricMatrix& m)
{
    char line[96];
    for (const auto& t : m.entries()) {
        std::snprintf(line, sizeof line, "%d %d %.17g\n", t.row(), t.col(), t.value());
        os << line;
    }
}

SymmetricMatrix assemble(const BasisCatalog& catalog, const ModelParams& p, double omega_c_k,
                         BoundaryStats* boundary)
{
    if (p.n_molecules != catalog.n_molecules()) {
        throw ParamError("assemble: catalog built for a different n_molecules");
    }
    const double wv = p.vib_freq;
    const double lambda = p.lambda();
    const double half_rabi = 0.5 * p.rabi_single;
    const double frame = p.cavity_freq_normal;
    const unsigned vmax = catalog.truncation().total_quanta;

    BoundaryStats stats;
    SymmetricMatrix h(catalog.size());
    for (std::size_t r = 0; r < catalog.size(); ++r) {
        const BasisState& s = catalog[r];
        const unsigned quanta = total_quanta(s.vib);

        double diag = wv * quanta;
        if (s.photon == 1) {
            diag += omega_c_k - frame;
        }
        if (s.excited_site) {
            diag += p.omega_e() - frame;
        }
        if (diag != 0.0) {
            h.add(r, r, diag);
        }

        if (s.excited_site) {
            const auto site = *s.excited_site;
            // Vibronic term: raising on the excited molecule (the lowering partner is the transpose).
            const unsigned own = quanta_on(s.vib, site);
            if (lambda != 0.0) {
                if (quanta + 1 <= vmax) {
                    BasisState up{s.excited_site, 0, shifted(s.vib, site, +1)};
                    h.add(catalog.index(up), r, wv * lambda * std::sqrt(own + 1.0));
                    ++stats.inside;
                } else {
                    ++stats.crossing;
                }
            }
            // a^dag |g_n><e_n| : same vibrational configuration, photon created.
            if (half_rabi != 0.0) {
                BasisState emitted{std::nullopt, 1, s.vib};
                if (catalog.find(emitted)) {
                    ++stats.inside;
                } else {
                    ++stats.crossing;
                }
            }
        }

        if (s.photon == 1 && half_rabi != 0.0) {
            for (int n = 0; n < catalog.n_molecules(); ++n) {
                BasisState absorbed{static_cast<std::uint16_t>(n), 0, s.vib};
                if (const auto c = catalog.find(absorbed)) {
                    h.add(*c, r, half_rabi);
                    ++stats.inside;
                } else {
                    ++stats.crossing;
                }
            }
        }
    }
    if (boundary) {
        *boundary = stats;
    }
    return h;
}

SymmetricMatrix assemble(const BasisCatalog& catalog, const ModelParams& p)
{
    return assemble(catalog, p, p.cavity_freq_normal);
}

Eigen::VectorXd assemble_ground(const BasisCatalog& catalog, const ModelParams& p)
{
    if (catalog.manifold() != Manifold::ground) {
        throw ParamError("assemble_ground: catalog is not a ground-manifold catalog");
    }
    Eigen::VectorXd e(static_cast<Eigen::Index>(catalog.size()));
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        e(static_cast<Eigen::Index>(i)) = p.vib_freq * total_quanta(catalog[i].vib);
    }
    return e;
}

} // namespace htc
