// Exact linear algebra over Z and Q: sparse rank, Smith normal form, chain
// maps, induced maps on rational homology, and long-exact-sequence rank
// verification for Mayer-Vietoris certificates.

#ifndef DH_HOMOLOGY_HPP
#define DH_HOMOLOGY_HPP

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "dh/config.hpp"
#include "dh/simplicial.hpp"

namespace dh {

/// Sparse integer matrix, row-major: each row is a sorted (col, value) list.
struct SparseZMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, mpz_class>>> entries;

    static SparseZMatrix zero(int r, int c);
    void add(int r, int c, const mpz_class& v);
};

/// Rank over Q by fraction-free row elimination.
int rank_q(SparseZMatrix m, const Limits& limits = Limits{});

/// Nonzero diagonal of the Smith normal form, with the divisibility chain
/// enforced (d_1 | d_2 | ...).
std::vector<mpz_class> smith_diagonal(SparseZMatrix m,
                                      const Limits& limits = Limits{});

/// Boundary matrix of K from dimension d to d-1 (orientation = sorted vertex
/// order). d = 0 gives the augmentation row when `augmented`.
SparseZMatrix boundary_matrix(const SimplicialComplex& K, int d,
                              bool augmented);

/// Chain complex of a simplicial complex with cached boundary ranks, plus a
/// rational cycle/homology coordinate system per degree (built on demand).
class ChainSystem {
  public:
    explicit ChainSystem(const SimplicialComplex& K, const Limits& limits);

    const SimplicialComplex& complex() const { return K_; }
    int top_dim() const;
    int n_cells(int d) const;
    int boundary_rank(int d) const; // rank of d -> d-1 over Q
    int betti(int d) const;         // unreduced

    /// Dense rational cycle basis in degree d (columns = basis cycles).
    const std::vector<std::vector<mpq_class>>& cycle_basis(int d) const;

    /// Coordinates of a cycle in H_d: the chain reduced modulo boundaries,
    /// expressed against the chosen homology representatives. Empty when
    /// betti(d) == 0.
    std::vector<mpq_class> homology_coordinates(
        int d, const std::vector<mpq_class>& cycle) const;

  private:
    struct DegreeData;
    const SimplicialComplex& K_;
    Limits limits_;
    mutable std::vector<int> boundary_ranks_; // -2 = unset
    mutable std::vector<std::shared_ptr<DegreeData>> degree_;
    DegreeData& degree_data(int d) const;
};

/// Vertex map A -> B inducing a simplicial map (images of simplices must be
/// simplices of B; collapsing is allowed and contributes zero on chains).
struct VertexMap {
    const SimplicialComplex* from = nullptr;
    const SimplicialComplex* to = nullptr;
    std::vector<int> image; // per vertex of `from`
};

/// Rank over Q of the induced map H_d(A) -> H_d(B).
int induced_map_rank(const VertexMap& f, ChainSystem& A, ChainSystem& B, int d);

/// Matrix of the induced map H_d(A) -> H_d(B) in the chosen bases.
std::vector<std::vector<mpq_class>> induced_map_matrix(const VertexMap& f,
                                                       ChainSystem& A,
                                                       ChainSystem& B, int d);

/// Representative cycles spanning H_d(A) (betti(d) many, deterministic).
std::vector<std::vector<mpq_class>> homology_rep_cycles(ChainSystem& A, int d);

/// Image of a d-cycle of `f.from` in the homology coordinates of B.
std::vector<mpq_class> induced_image_coords(const VertexMap& f, ChainSystem& B,
                                            int d,
                                            const std::vector<mpq_class>& cycle);

int dense_rank_q(std::vector<std::vector<mpq_class>> m);

} // namespace dh

#endif
