// hamiltonian.hpp: Real symmetric HTC Hamiltonian on a configuration catalog (rotating frame)

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "htc/basis.hpp"
#include "htc/model.hpp"

namespace htc {

/// Lower-triangular coordinate storage (row >= col) of a real symmetric matrix.
/// Repeated coordinates are summed when materialized.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t dimension = 0) : dimension_(dimension) {}

    std::size_t dimension() const { return dimension_; }
    const std::vector<Eigen::Triplet<double>>& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }

    /// Adds value at (row, col) and, implicitly, at (col, row).
    void add(std::size_t row, std::size_t col, double value);

    Eigen::MatrixXd dense() const;
    Eigen::SparseMatrix<double> sparse() const;

private:
    std::size_t dimension_;
    std::vector<Eigen::Triplet<double>> entries_;
};

/// "row col value" per line for every stored lower-triangular entry.
void dump_matrix(std::ostream& os, const SymmetricMatrix& m);

/// Hamiltonian terms whose image leaves the catalog because of the truncation.
struct BoundaryStats {
    std::size_t inside{0};
    std::size_t crossing{0};
    double crossing_fraction() const
    {
        const auto total = inside + crossing;
        return total == 0 ? 0.0 : static_cast<double>(crossing) / static_cast<double>(total);
    }
};

/// Assembles
///   H = (omega_c(k) - omega_c) a^dag a + omega_v sum_n b_n^dag b_n
///     + sum_n [omega_e - omega_c + omega_v lambda (b_n + b_n^dag)] |e_n><e_n|
///     + Omega/2 sum_n (|g_n><e_n| a^dag + h.c.)
/// on `catalog`, in the frame rotating at the normal-incidence cavity frequency
/// (energies of the one-excitation manifold are reported relative to omega_c).
SymmetricMatrix assemble(const BasisCatalog& catalog, const ModelParams& p, double omega_c_k,
                         BoundaryStats* boundary = nullptr);

/// Normal-incidence assembly (omega_c(k) = omega_c).
SymmetricMatrix assemble(const BasisCatalog& catalog, const ModelParams& p);

/// Diagonal energies omega_v * sum(nu) of a ground-manifold catalog.
Eigen::VectorXd assemble_ground(const BasisCatalog& catalog, const ModelParams& p);

} // namespace htc
