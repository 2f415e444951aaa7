// pipeline.cpp: One-shot solve of both manifolds

#include "htc/pipeline.hpp"

namespace htc {

Solution solve(const ModelParams& raw, const TruncationParams& t)
{
    const ModelParams p = validate_params(raw);
    BasisCatalog excited_catalog = enumerate(Manifold::one_excitation, p.n_molecules, t);
    BasisCatalog ground_catalog = enumerate(Manifold::ground, p.n_molecules, t);

    BoundaryStats boundary;
    const SymmetricMatrix h = assemble(excited_catalog, p, p.cavity_freq_normal, &boundary);
    EigenSystem excited = eigh(h, excited_catalog.id());
    EigenSystem ground = diagonal_eigensystem(assemble_ground(ground_catalog, p), ground_catalog.id());
    TransitionTable table = build_transitions(excited_catalog, excited, ground_catalog, ground, p);

    return Solution{p,
                    std::move(excited_catalog),
                    std::move(ground_catalog),
                    std::move(excited),
                    std::move(ground),
                    std::move(table),
                    boundary};
}

} // namespace htc
