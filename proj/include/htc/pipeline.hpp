// pipeline.hpp: Catalogs, eigen-systems and transition table for one parameter set

#pragma once

#include "htc/basis.hpp"
#include "htc/eigensolver.hpp"
#include "htc/hamiltonian.hpp"
#include "htc/model.hpp"
#include "htc/observables.hpp"

namespace htc {

struct Solution {
    ModelParams params;
    BasisCatalog excited_catalog;
    BasisCatalog ground_catalog;
    EigenSystem excited;
    EigenSystem ground;
    TransitionTable table;
    BoundaryStats boundary;
};

/// Validates `p`, enumerates both manifolds, diagonalizes at normal incidence and builds
/// the transition table.
Solution solve(const ModelParams& p, const TruncationParams& t);

} // namespace htc
