// Abstract simplicial complexes with exact integral homology, links, joins,
// flagness, barycentric subdivision, and sphere/disk certificates.

#ifndef DH_SIMPLICIAL_HPP
#define DH_SIMPLICIAL_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dh/config.hpp"
#include "dh/errors.hpp"

namespace dh {

using Simplex = std::vector<int>; // sorted vertex ids

/// Finite abstract simplicial complex. Vertices carry string labels; facets
/// are the maximal simplices. Construction normalizes: sorts, deduplicates
/// and drops faces contained in other facets. Immutable afterwards.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;
    static SimplicialComplex from_facets(std::vector<std::string> labels,
                                         std::vector<Simplex> facets);

    int n_vertices() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_[v]; }
    std::optional<int> vertex_by_label(const std::string& name) const;

    const std::vector<Simplex>& facets() const { return facets_; }
    bool empty() const { return labels_.empty(); }

    /// -1 for the empty complex.
    int dimension() const;

    /// All simplices of dimension d (d = 0 ... dimension()), sorted.
    const std::vector<Simplex>& simplices(int d) const;
    std::size_t total_simplices() const;

    bool contains(const Simplex& s) const;

    /// Face counts (f_0, f_1, ...).
    std::vector<std::size_t> f_vector() const;
    long euler_characteristic() const;

    bool edge(int u, int v) const;
    /// Every clique of the 1-skeleton spans a simplex.
    bool is_flag() const;

    SimplicialComplex link(const Simplex& s) const;
    SimplicialComplex join(const SimplicialComplex& other) const;
    SimplicialComplex barycentric_subdivision() const;
    SimplicialComplex cone(const std::string& apex_label) const;

    /// Full subcomplex on a vertex subset (keeps original labels).
    SimplicialComplex induced(const std::vector<int>& vertices) const;

    /// Connected components of the 1-skeleton (isolated vertices count),
    /// as vertex-id lists.
    std::vector<std::vector<int>> component_vertex_sets() const;
    std::vector<SimplicialComplex> components() const;

    /// Faces of dimension (dim-1) contained in exactly one facet.
    std::vector<Simplex> free_faces() const;
    /// Subcomplex spanned by the free faces (the pseudo-boundary).
    SimplicialComplex boundary_subcomplex() const;

    bool operator==(const SimplicialComplex& o) const;

    /// Canonical content hash (labels ignored); used for caching.
    std::size_t structural_hash() const;

  private:
    std::vector<std::string> labels_;
    std::vector<Simplex> facets_;
    mutable std::vector<std::vector<Simplex>> simplices_; // lazily filled
    void ensure_simplices() const;
};

/// Integral homology: per-degree rational rank and torsion coefficients,
/// each > 1 and dividing the next.
struct HomologyProfile {
    bool reduced = false;
    std::vector<int> betti;                      // degree 0..top
    std::vector<std::vector<mpz_class>> torsion; // degree 0..top

    int betti_at(int k) const {
        return (k >= 0 && k < static_cast<int>(betti.size())) ? betti[k] : 0;
    }
    bool acyclic() const; // all reduced groups vanish (requires reduced form)
    bool operator==(const HomologyProfile& o) const;
    std::string to_string() const;
};

/// Exact simplicial homology via Smith normal form over Z.
HomologyProfile homology(const SimplicialComplex& K, bool reduced,
                         const Limits& limits = Limits{});

/// Rational Betti numbers only (cheaper; no torsion).
std::vector<int> betti_numbers(const SimplicialComplex& K, bool reduced,
                               const Limits& limits = Limits{});

enum class SphereVerdict {
    sphere,          // certified sphere (d <= 2)
    homology_sphere, // all checks pass, d == 3: sphere status unresolved
    pass_high_dim,   // all checks pass, d > 3 (homology-level only)
    fail
};

struct SphereCertificate {
    int dim = -1;
    bool pseudomanifold = false;
    bool homology_matches = false;
    bool links_pass = false;
    SphereVerdict verdict = SphereVerdict::fail;
    std::vector<std::string> failures;

    bool all_pass() const {
        return pseudomanifold && homology_matches && links_pass;
    }
};

/// Certify that K is a closed pseudomanifold of dimension d with the
/// integral homology of S^d and all simplex links homology spheres of the
/// complementary dimension.
SphereCertificate is_homology_sphere(const SimplicialComplex& K, int d,
                                     const Limits& limits = Limits{});

struct DiskCertificate {
    int dim = -1;
    bool pseudomanifold_with_boundary = false;
    bool acyclic = false;
    SphereCertificate boundary_sphere;
    bool pass = false;
    std::vector<std::string> failures;
};

/// Homology-disk check: acyclic d-pseudomanifold with non-empty boundary
/// whose boundary is a homology (d-1)-sphere.
DiskCertificate is_homology_disk(const SimplicialComplex& K, int d,
                                 const Limits& limits = Limits{});

/// Simplicial isomorphism test (backtracking over degree/star invariants).
bool isomorphic(const SimplicialComplex& A, const SimplicialComplex& B);

} // namespace dh

#endif
