// The nerve L of a Coxeter system and the fundamental chamber K (cone on the
// barycentric subdivision of L) with its mirror structure.

#ifndef DH_NERVE_HPP
#define DH_NERVE_HPP

#include <cstdint>

#include "dh/coxeter.hpp"
#include "dh/simplicial.hpp"

namespace dh {

struct SphericalSubset {
    GenSet subset;
    std::int64_t order = 1;
};

/// Nerve of (W,S): simplicial complex on the generators whose simplices are
/// the non-empty spherical subsets. Vertex v of `complex` is generator v.
struct Nerve {
    SimplicialComplex complex;
    std::vector<SphericalSubset> spherical; // non-empty subsets, sorted
    int rank = 0;

    const SphericalSubset* find(const GenSet& T) const;
};

Nerve build_nerve(const CoxeterSystem& W, const Limits& limits = Limits{});

/// A space with mirrors indexed by the generators: the gluing data for the
/// basic construction. S_of[x] is the set of mirrors through vertex x; a
/// mirror is the full subcomplex on the vertices listing it.
struct MirroredSpace {
    SimplicialComplex space;
    std::vector<GenSet> S_of;                 // per vertex of `space`
    std::vector<std::vector<int>> mirror_vertices; // per generator
    std::vector<std::vector<Simplex>> mirror_facets; // maximal mirror simplices

    static MirroredSpace from_S_of(SimplicialComplex space,
                                   std::vector<GenSet> S_of, int rank);
};

/// Davis chamber: K = cone on sd(L). Chamber vertices are the spherical
/// subsets (the cone vertex is the empty set, labelled "*"); S(x) of the
/// vertex for subset T is T itself.
struct MirroredChamber {
    MirroredSpace model;
    int cone_vertex = -1;
};

MirroredChamber build_chamber(const Nerve& N);

struct ManifoldCertificate {
    int dim = 0; // the n in "Sigma is an n-manifold"
    SphereCertificate sphere;  // nerve vs S^{n-1}
    DiskCertificate disk;      // nerve vs D^{n-1}
};

/// Check whether the nerve triangulates S^{n-1} (closed case) or D^{n-1}
/// (boundary case).
ManifoldCertificate manifold_check(const Nerve& N, int n,
                                   const Limits& limits = Limits{});

} // namespace dh

#endif
