// The basic construction U(W,X) on a Cayley ball: chamber systems with panel
// adhesions, realizations, walls, finite quotients, torsion-free and trivial
// intersection certificates.

#ifndef DH_DAVIS_HPP
#define DH_DAVIS_HPP

#include <memory>
#include <optional>
#include <set>

#include "dh/coxeter.hpp"
#include "dh/nerve.hpp"
#include "dh/simplicial.hpp"

namespace dh {

/// Adhesion between chambers w and ws along mirror s, keyed by the ShortLex
/// smaller side.
struct Panel {
    int chamber = -1;
    Gen gen = -1;
    auto operator<=>(const Panel&) const = default;
};

/// Realization of a chamber complex as a simplicial complex. Vertex classes
/// are (model vertex, chamber)-pairs merged along active panels.
struct Realization {
    SimplicialComplex complex;
    std::vector<std::vector<int>> chamber_vertex; // [chamber][model vtx] -> vid
    std::vector<std::pair<int, int>> representative; // vid -> (chamber, vtx)
};

/// Realized subcomplex remembering its embedding.
struct RealizedSubcomplex {
    SimplicialComplex complex;
    std::vector<int> to_parent; // vertex -> realized vid in the parent
    std::set<int> parent_vertices;
};

/// Ball of the basic construction U(W,X): chambers = Cayley ball elements,
/// adhesions = panels between present chambers. Cutting deactivates panels;
/// panels to absent chambers are the truncation boundary. Immutable; cuts
/// return a new complex sharing the model and group engine.
class ChamberComplex {
  public:
    ChamberComplex(std::shared_ptr<Group> group, MirroredSpace model,
                   CayleyBall ball);

    const CoxeterSystem& system() const { return group_->system(); }
    Group& group() const { return *group_; }
    std::shared_ptr<Group> group_ptr() const { return group_; }
    const MirroredSpace& model() const { return model_; }
    const CayleyBall& ball() const { return ball_; }

    int n_chambers() const { return static_cast<int>(ball_.elements.size()); }
    const Element& chamber(int c) const { return ball_.elements[c]; }
    std::optional<int> chamber_index(const Element& w) const;

    /// Chamber index of ws, or -1 when outside the ball.
    int neighbor(int c, Gen s) const { return neighbor_[c][s]; }
    bool truncation_boundary(int c, Gen s) const { return neighbor_[c][s] < 0; }
    bool panel_active(Panel p) const;
    Panel canonical_panel(int c, Gen s) const;

    /// All active panels, canonical and sorted.
    std::vector<Panel> active_panels() const;
    /// Interior adhesions (both chambers present), active or not.
    std::vector<Panel> interior_panels() const;

    /// New complex with the given active panels deactivated.
    ChamberComplex deactivate(const std::vector<Panel>& panels) const;

    /// Connected components of the chamber graph over active panels.
    std::vector<std::vector<int>> components() const;

    const Realization& realization() const;

    /// Realization restricted to a chamber subset (vertex ids are fresh, but
    /// labels match the full realization).
    Realization realize_chambers(const std::vector<int>& chambers) const;

    /// Carrier of a set of panels: the realized mirror subcomplex.
    RealizedSubcomplex carrier(const std::vector<Panel>& panels) const;

  private:
    std::shared_ptr<Group> group_;
    MirroredSpace model_;
    CayleyBall ball_;
    std::vector<std::vector<int>> neighbor_;
    std::set<Panel> inactive_;
    mutable std::shared_ptr<Realization> realization_;
};

/// Chambers = Cayley ball of radius r, all interior adhesions active.
ChamberComplex basic_construction(std::shared_ptr<Group> group,
                                  MirroredSpace model, int radius);

/// Wall: a reflection together with the panels it flips inside the ball.
struct Wall {
    Element reflection;
    std::vector<Panel> panels;
    std::vector<Gen> panel_types; // distinct generators among the panels
};

/// One wall per reflection with an active panel in the ball; panels grouped
/// by the normal form of u s u^{-1}. Sorted by reflection.
std::vector<Wall> walls_in_ball(const ChamberComplex& U);

/// True when chamber w lies on the identity side of the wall of r.
bool identity_side(Group& group, const Element& reflection, const Element& w);

// ---------------------------------------------------------------------------
// Finite quotients.

/// Finite quotient phi: W -> Q given by generator images, either integral
/// reflection (Cartan) matrices reduced mod an odd prime, or permutations.
/// All Coxeter relations are verified at construction.
class FiniteQuotient {
  public:
    enum class Kind { reflection_mod_p, permutation };

    static FiniteQuotient reflection_mod_p(const CoxeterSystem& W, int p);
    static FiniteQuotient from_permutations(const CoxeterSystem& W,
                                            std::vector<std::vector<int>> images,
                                            int degree);
    /// All generators map to the identity permutation (kernel = W).
    static FiniteQuotient trivial(const CoxeterSystem& W);

    Kind kind() const { return kind_; }
    const std::string& description() const { return description_; }
    int modulus() const { return modulus_; }

    std::vector<int> identity_element() const;
    std::vector<int> image(const Element& w) const;
    std::vector<int> image_word(const Word& w) const;
    bool kernel_contains(const Element& w) const;

  private:
    FiniteQuotient(const CoxeterSystem& W, Kind kind, int modulus, int dim,
                   std::vector<std::vector<int>> gen_images,
                   std::string description);
    std::vector<int> compose(const std::vector<int>& a,
                             const std::vector<int>& b) const;
    void check_relations(const CoxeterSystem& W) const;

    Kind kind_;
    int modulus_ = 0;
    int dim_ = 0;
    std::vector<std::vector<int>> gen_images_;
    std::string description_;
};

/// Parse a quotient file: one line per generator, `name: <cycles>`, e.g.
/// `a: (1 2)(3 4)`.
FiniteQuotient parse_quotient(const CoxeterSystem& W, std::string_view text);

struct TorsionCertificate {
    bool pass = false;
    struct Item {
        GenSet subset;
        bool injective = false;
        Element witness; // non-identity kernel element when !injective
    };
    std::vector<Item> items;
};

/// phi is injective on W_T for every maximal spherical T iff the kernel is
/// torsion-free (every finite subgroup is conjugate into a spherical
/// parabolic).
TorsionCertificate torsion_free_check(const Nerve& N, const FiniteQuotient& Q,
                                      Group& group);

struct TrivialIntersectionCertificate {
    bool pass = false;
    struct Violation {
        Element gamma;
        Element reflection;            // wall being translated
        Element translated_reflection; // gamma r gamma^{-1}
        std::vector<std::string> shared_vertices;
    };
    std::vector<Violation> violations;
    std::vector<std::vector<int>> wall_orbits; // indices into walls_in_ball
    int gamma_ball_count = 0;
    std::string scope_caveat;
};

/// For every wall and every ball-representable gamma in ker phi, the
/// translated wall coincides with it or is vertex-disjoint from it.
TrivialIntersectionCertificate trivial_intersection_check(
    const ChamberComplex& U, const FiniteQuotient& Q);

struct LinkCertificate {
    bool pass = false;
    int interior_chambers = 0;
    int excluded_chambers = 0;
    std::vector<std::pair<int, std::string>> failures;
    std::string scope_caveat;
};

/// Coarse-cellulation link check: for every chamber whose spherical residues
/// all lie in the ball, the complete glued residues through it realize
/// exactly the nerve.
LinkCertificate vertex_link_check(const ChamberComplex& U, const Nerve& N);

} // namespace dh

#endif
