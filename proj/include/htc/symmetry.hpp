// symmetry.hpp: Permutation-symmetry block diagonalization of the one-excitation Hamiltonian

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "htc/basis.hpp"
#include "htc/eigensolver.hpp"
#include "htc/hamiltonian.hpp"
#include "htc/model.hpp"

namespace htc {

enum class BlockKind {
    symmetric,           // totally symmetric irrep, contains |G;1_c>
    standard,            // one representative of the (N-1)-dimensional standard irrep
    pair_symmetric,      // one representative of [N-2,2]: swap-even pair configurations
    pair_antisymmetric,  // one representative of [N-2,1,1]: swap-odd pair configurations
};

struct SymmetryBlock {
    BlockKind kind;
    long multiplicity;
    SymmetricMatrix matrix;
    std::vector<std::string> labels;  // one per block basis vector
    Eigen::VectorXd photon_mask;      // 1 on pure photon basis vectors, 0 elsewhere
    Eigen::Index vacuum_photon{-1};   // index of |G;1_c> (symmetric block only)
};

/// Blocks of the one-excitation Hamiltonian on the catalog enumerate(one_excitation, N, t).
/// Supported for t.spectators <= 1; throws ParamError otherwise. Every block eigenvalue
/// occurs `multiplicity` times in the full catalog spectrum.
std::vector<SymmetryBlock> build_symmetric_blocks(const ModelParams& p, const TruncationParams& t,
                                                  double omega_c_k);
std::vector<SymmetryBlock> build_symmetric_blocks(const ModelParams& p, const TruncationParams& t);

bool symmetry_supported(const TruncationParams& t);

/// Eigenvalues of all blocks, each repeated by its multiplicity, with the matching photon
/// weights; sorted ascending.
struct BlockSpectrum {
    Eigen::VectorXd values;
    Eigen::VectorXd photon_weight;
};
BlockSpectrum merged_spectrum(const std::vector<SymmetryBlock>& blocks);

} // namespace htc
