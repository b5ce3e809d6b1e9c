// The Davis reflection group trick: from a compact triangulated manifold
// with flag boundary, build the right-angled system on the boundary
// vertices, the basic construction U(W_L, M), its wall orbits, and a
// hierarchy ending in copies of M.

#ifndef DH_TRICK_HPP
#define DH_TRICK_HPP

#include "dh/hierarchy.hpp"

namespace dh {

struct MirroredManifold {
    SimplicialComplex input;    // complex as supplied
    SimplicialComplex boundary; // L, the flag boundary triangulation
    /// Chamber model: the input with its boundary barycentrically
    /// subdivided, so that the closed vertex stars of L are full
    /// subcomplexes. Mirrors are indexed by the vertices of L.
    MirroredSpace space;
    CoxeterSystem system; // right-angled: m = 2 on edges of L, inf otherwise
};

/// Checks the boundary (must be exactly the free faces of M, closed, flag),
/// subdivides it, and assembles the mirror structure. Refuses non-flag
/// boundaries rather than subdividing them.
MirroredManifold prepare_mirrored_manifold(const SimplicialComplex& M,
                                           const SimplicialComplex& boundary,
                                           const Limits& limits = Limits{});

struct WallPropertyCertificates {
    bool walls_acyclic = false;       // each wall: acyclic components
    bool orbits_disjoint = false;     // each orbit: disjoint union of walls
    bool intersections_acyclic = false;
    bool finite_panel_types = false;
    bool local_right_angled = false;  // walls through a vertex commute and
                                      // number |S(x)|
    std::vector<std::string> failures;

    bool pass() const {
        return walls_acyclic && orbits_disjoint && intersections_acyclic &&
               finite_panel_types && local_right_angled;
    }
};

struct InteriorLinkShadow {
    bool pass = false;
    int checked = 0;
    std::vector<std::string> failures;
};

struct TrickOutput {
    std::shared_ptr<Group> group;
    std::shared_ptr<ChamberComplex> complex; // U(W_L, M) ball
    WallPropertyCertificates wall_certs;
    WallFamily family;
    HierarchyTrace trace;
    InteriorLinkShadow interior_links;
    bool pass = false;
};

/// Build U to radius r, certify the wall properties, and run the hierarchy;
/// terminal components are compared against the prepared chamber model.
/// With a quotient the cutting family is its kernel-orbit family; otherwise
/// the full reflection-group type orbits are used.
TrickOutput run_trick(const MirroredManifold& MM, int radius,
                      const FiniteQuotient* Q = nullptr,
                      const Limits& limits = Limits{});

} // namespace dh

#endif
