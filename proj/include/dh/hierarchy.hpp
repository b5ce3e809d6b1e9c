// Tidy-collection verification, cut-open execution, hierarchy traces and
// Mayer-Vietoris rank certificates.

#ifndef DH_HIERARCHY_HPP
#define DH_HIERARCHY_HPP

#include "dh/davis.hpp"
#include "dh/homology.hpp"

namespace dh {

/// One cutting submanifold: a union of walls, invariant (within the ball)
/// under the acting subgroup.
struct WallOrbit {
    std::string label;
    std::vector<Element> reflections;
    std::vector<Panel> panels;
};

/// Ordered cutting family; cuts are executed in list order.
struct WallFamily {
    std::vector<WallOrbit> orbits;
};

/// Orbits of walls under the ball-representable kernel of Q, ordered by
/// least reflection.
WallFamily wall_orbit_family(const ChamberComplex& U, const FiniteQuotient& Q);

/// One orbit per generator type (all walls whose panels cross mirrors of s);
/// the full reflection-group orbits for right-angled and even systems.
WallFamily wall_type_family(const ChamberComplex& U);

struct TidyCertificate {
    bool components_acyclic = false;
    bool intersections_acyclic = false;
    bool boundary_condition = false;
    bool local_arrangement = false;
    std::vector<std::string> failures;
    std::string caveat =
        "contractibility is audited as integral acyclicity; simple "
        "connectivity is not decided";

    bool pass() const {
        return components_acyclic && intersections_acyclic &&
               boundary_condition && local_arrangement;
    }
};

/// The four tidiness conditions for (M, E), scoped to the ball interior.
TidyCertificate check_tidy(const ChamberComplex& M, const WallFamily& E,
                           const Limits& limits = Limits{});

/// M with F's panels deactivated (the combinatorial cut along F).
ChamberComplex cut_open(const ChamberComplex& M, const std::vector<Panel>& F);

struct MayerVietorisCertificate {
    std::vector<int> dim_C;   // H_k(F+) + H_k(F-)
    std::vector<int> dim_mid; // H_k(F) + H_k(N)
    std::vector<int> dim_M;
    std::vector<int> rank1;
    std::vector<int> rank2;
    std::vector<int> betti_F; // rational homology of the cut locus
    std::vector<int> betti_N; // and of the cut-open complex (affected scope)
    bool composite_zero = false;
    bool rank_exact = false;
    long chi_M = 0, chi_N = 0, chi_F = 0;
    bool euler_ok = false; // chi(M) = chi(N) - chi(F)
    int affected_chambers = 0;

    bool pass() const { return composite_zero && rank_exact && euler_ok; }
};

/// Rank-exactness of the cut Mayer-Vietoris sequence
///   H_k(F x dI) -> H_k(F) + H_k(N) -> H_k(M)
/// verified on the components of M touched by the cut.
MayerVietorisCertificate verify_cut_mv(const ChamberComplex& M,
                                       const ChamberComplex& N,
                                       const std::vector<Panel>& panels,
                                       const std::vector<Element>& reflections,
                                       const std::vector<int>& scope,
                                       const Limits& limits = Limits{});

struct HierarchyStep {
    int index = 0;
    std::string orbit_label;
    std::vector<Element> reflections;
    int panels_cut = 0;
    int components_before = 0;
    int components_after = 0;
    MayerVietorisCertificate mv;
    bool residual_tidy = true;
};

struct TerminalReport {
    int components = 0;
    bool all_single_chambers = false;
    bool all_match_end_model = false; // vs the chamber model (or end complex)
};

struct HierarchyTrace {
    std::vector<HierarchyStep> steps;
    TerminalReport terminal;
    bool pass = false;
    std::vector<std::shared_ptr<ChamberComplex>> stages; // M_0 .. M_{m+1}
    std::vector<int> scope; // chamber ids the trace is restricted to
    std::string caveat;
};

struct HierarchyOptions {
    bool force = false;            // run even if the initial tidy check fails
    bool recheck_residual = true;  // re-run check_tidy after every cut
    const SimplicialComplex* end_model = nullptr; // defaults to chamber model
};

/// Execute the cuts of E in order on M, recording per-step Mayer-Vietoris
/// certificates, Euler bookkeeping and the terminal census.
HierarchyTrace run_hierarchy(const ChamberComplex& M, const WallFamily& E,
                             const HierarchyOptions& opts = {},
                             const Limits& limits = Limits{});

/// Restrict a trace to one component of stage `stage`; steps that miss the
/// component are elided. Stabilizer elements (ball-scoped) are reported.
struct InducedHierarchy {
    HierarchyTrace trace;
    std::vector<Element> stabilizer_elements;
};
InducedHierarchy induced_hierarchy(const HierarchyTrace& trace, int stage,
                                   int component_index,
                                   const FiniteQuotient* Q = nullptr,
                                   const Limits& limits = Limits{});

} // namespace dh

#endif
