#include "dh/homology.hpp"

#include <algorithm>
#include <cassert>
#include <memory>

namespace dh {

SparseZMatrix SparseZMatrix::zero(int r, int c) {
    SparseZMatrix m;
    m.rows = r;
    m.cols = c;
    m.entries.resize(r);
    return m;
}

void SparseZMatrix::add(int r, int c, const mpz_class& v) {
    entries[r].push_back({c, v});
}

namespace {

using Row = std::vector<std::pair<int, mpz_class>>;

void normalize_row(Row& row) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Row out;
    for (auto& [c, v] : row) {
        if (!out.empty() && out.back().first == c)
            out.back().second += v;
        else
            out.push_back({c, v});
    }
    row.clear();
    for (auto& [c, v] : out)
        if (v != 0)
            row.push_back({c, std::move(v)});
}

mpz_class row_gcd(const Row& row) {
    mpz_class g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

void divide_row(Row& row, const mpz_class& g) {
    if (g <= 1)
        return;
    for (auto& [c, v] : row)
        v /= g;
}

const mpz_class* row_entry(const Row& row, int col) {
    auto it = std::lower_bound(
        row.begin(), row.end(), col,
        [](const auto& e, int c) { return e.first < c; });
    if (it != row.end() && it->first == col)
        return &it->second;
    return nullptr;
}

// target = pv * target - tv * pivot  (cancels column `col`), then /gcd
void eliminate(Row& target, const Row& pivot, const mpz_class& pv,
               const mpz_class& tv) {
    Row out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot.size()) {
        if (j == pivot.size() ||
            (i < target.size() && target[i].first < pivot[j].first)) {
            out.push_back({target[i].first, pv * target[i].second});
            ++i;
        } else if (i == target.size() || pivot[j].first < target[i].first) {
            out.push_back({pivot[j].first, -tv * pivot[j].second});
            ++j;
        } else {
            mpz_class v = pv * target[i].second - tv * pivot[j].second;
            if (v != 0)
                out.push_back({target[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    divide_row(out, row_gcd(out));
    target = std::move(out);
}

} // namespace

int rank_q(SparseZMatrix m, const Limits& limits) {
    if (static_cast<std::size_t>(m.rows) * std::max(m.cols, 1) >
        limits.max_cells * 16)
        throw ResourceLimit("matrix too large for rank computation");
    for (auto& row : m.entries)
        normalize_row(row);

    std::vector<bool> used(m.rows, false);
    int rank = 0;
    while (true) {
        // pick the unused nonempty row with fewest entries
        int best = -1;
        for (int r = 0; r < m.rows; ++r) {
            if (used[r] || m.entries[r].empty())
                continue;
            if (best < 0 || m.entries[r].size() < m.entries[best].size())
                best = r;
        }
        if (best < 0)
            break;
        used[best] = true;
        ++rank;
        // pivot on the entry with smallest absolute value
        const Row& prow = m.entries[best];
        int pcol = prow[0].first;
        mpz_class pval = prow[0].second;
        for (const auto& [c, v] : prow)
            if (cmp(abs(v), abs(pval)) < 0) {
                pcol = c;
                pval = v;
            }
        for (int r = 0; r < m.rows; ++r) {
            if (used[r] || m.entries[r].empty())
                continue;
            const mpz_class* tv = row_entry(m.entries[r], pcol);
            if (tv)
                eliminate(m.entries[r], prow, pval, *tv);
        }
    }
    return rank;
}

// Sparse Smith normal form: row maps plus per-column nonzero row sets. The
// min-|value| pivot rule keeps boundary-matrix eliminations at unit pivots.
std::vector<mpz_class> smith_diagonal(SparseZMatrix sm, const Limits& limits) {
    const int R = sm.rows, C = sm.cols;
    std::size_t nnz = 0;
    for (const auto& row : sm.entries)
        nnz += row.size();
    if (nnz > limits.max_cells)
        throw ResourceLimit("matrix too large for Smith normal form");

    std::vector<std::map<int, mpz_class>> rows(R);
    std::vector<std::set<int>> col_rows(C);
    for (int r = 0; r < R; ++r) {
        Row row = sm.entries[r];
        normalize_row(row);
        for (auto& [c, v] : row) {
            rows[r][c] = v;
            col_rows[c].insert(r);
        }
    }
    sm.entries.clear();

    auto set_entry = [&](int r, int c, const mpz_class& v) {
        if (v == 0) {
            rows[r].erase(c);
            col_rows[c].erase(r);
        } else {
            rows[r][c] = v;
            col_rows[c].insert(r);
        }
    };
    // target_row -= q * source_row
    auto row_axpy = [&](int target, int source, const mpz_class& q) {
        if (q == 0)
            return;
        for (const auto& [c, v] : rows[source]) {
            mpz_class nv = 0;
            if (auto it = rows[target].find(c); it != rows[target].end())
                nv = it->second;
            nv -= q * v;
            set_entry(target, c, nv);
        }
    };
    auto col_axpy = [&](int target, int source, const mpz_class& q) {
        if (q == 0)
            return;
        std::vector<int> src_rows(col_rows[source].begin(),
                                  col_rows[source].end());
        for (int r : src_rows) {
            mpz_class nv = 0;
            if (auto it = rows[r].find(target); it != rows[r].end())
                nv = it->second;
            nv -= q * rows[r][source];
            set_entry(r, target, nv);
        }
    };

    std::vector<bool> row_done(R, false), col_done(C, false);
    std::vector<mpz_class> diag;
    while (true) {
        // min-|value| pivot among live entries
        int pr = -1, pc = -1;
        mpz_class pv;
        for (int r = 0; r < R; ++r) {
            if (row_done[r])
                continue;
            for (const auto& [c, v] : rows[r]) {
                if (col_done[c])
                    continue;
                if (pr < 0 || cmp(abs(v), abs(pv)) < 0) {
                    pr = r;
                    pc = c;
                    pv = v;
                }
                if (pv == 1 || pv == -1)
                    break;
            }
            if (pr >= 0 && (pv == 1 || pv == -1))
                break;
        }
        if (pr < 0)
            break;

        bool clean = true;
        std::vector<int> touch(col_rows[pc].begin(), col_rows[pc].end());
        for (int r : touch) {
            if (r == pr || row_done[r])
                continue;
            mpz_class a = rows[r][pc];
            mpz_class q = a / pv;
            row_axpy(r, pr, q);
            if (rows[r].count(pc))
                clean = false; // remainder is a smaller pivot; restart
        }
        if (!clean)
            continue;
        std::vector<int> pcols;
        for (const auto& [c, v] : rows[pr])
            if (c != pc && !col_done[c])
                pcols.push_back(c);
        for (int c : pcols) {
            mpz_class a = rows[pr][c];
            mpz_class q = a / pv;
            col_axpy(c, pc, q);
            if (rows[pr].count(c))
                clean = false;
        }
        if (!clean)
            continue;
        diag.push_back(abs(pv));
        row_done[pr] = true;
        col_done[pc] = true;
    }

    // enforce the divisibility chain d1 | d2 | ...
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[j] % diag[i] == 0)
                continue;
            mpz_class g, l;
            mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
            l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    std::sort(diag.begin(), diag.end());
    return diag;
}

SparseZMatrix boundary_matrix(const SimplicialComplex& K, int d,
                              bool augmented) {
    const auto& cells = K.simplices(d);
    if (d == 0) {
        SparseZMatrix m = SparseZMatrix::zero(augmented ? 1 : 0,
                                              static_cast<int>(cells.size()));
        if (augmented)
            for (int c = 0; c < static_cast<int>(cells.size()); ++c)
                m.add(0, c, 1);
        return m;
    }
    const auto& faces = K.simplices(d - 1);
    std::map<Simplex, int> face_index;
    for (int i = 0; i < static_cast<int>(faces.size()); ++i)
        face_index[faces[i]] = i;
    SparseZMatrix m = SparseZMatrix::zero(static_cast<int>(faces.size()),
                                          static_cast<int>(cells.size()));
    for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
        const Simplex& s = cells[c];
        int sign = 1;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop)
                    face.push_back(s[i]);
            m.add(face_index.at(face), c, sign);
            sign = -sign;
        }
    }
    for (auto& row : m.entries)
        normalize_row(row);
    return m;
}

// ---------------------------------------------------------------------------
// ChainSystem: rational homology coordinates.

namespace {

// reduce `vec` against echelon columns (each with a unit pivot position);
// returns the coefficients used, in echelon order
std::vector<mpq_class> echelon_reduce(
    std::vector<mpq_class>& vec,
    const std::vector<std::pair<int, std::vector<mpq_class>>>& echelon) {
    std::vector<mpq_class> coeffs;
    coeffs.reserve(echelon.size());
    for (const auto& [pivot, col] : echelon) {
        mpq_class c = vec[pivot];
        coeffs.push_back(c);
        if (c != 0)
            for (std::size_t i = 0; i < vec.size(); ++i)
                if (col[i] != 0)
                    vec[i] -= c * col[i];
    }
    return coeffs;
}

// append `vec` to the echelon if independent; returns pivot or -1
int echelon_insert(std::vector<mpq_class> vec,
                   std::vector<std::pair<int, std::vector<mpq_class>>>& echelon) {
    echelon_reduce(vec, echelon);
    int pivot = -1;
    for (std::size_t i = 0; i < vec.size(); ++i)
        if (vec[i] != 0) {
            pivot = static_cast<int>(i);
            break;
        }
    if (pivot < 0)
        return -1;
    mpq_class p = vec[pivot];
    for (auto& v : vec)
        v /= p;
    echelon.push_back({pivot, std::move(vec)});
    return pivot;
}

} // namespace

struct ChainSystem::DegreeData {
    // echelonized boundary space im d_{k+1}
    std::vector<std::pair<int, std::vector<mpq_class>>> boundary_echelon;
    // homology representatives appended after the boundary columns; the
    // indices into `combined` that correspond to representatives
    std::vector<std::pair<int, std::vector<mpq_class>>> combined;
    std::vector<int> rep_positions;
    std::vector<std::vector<mpq_class>> cycle_basis;
    // degree-0 shortcut: component id per vertex and rep component order
    bool dim0_shortcut = false;
    std::vector<int> vertex_component;
    int n_components = 0;
};

ChainSystem::ChainSystem(const SimplicialComplex& K, const Limits& limits)
    : K_(K), limits_(limits) {
    const int top = std::max(K.dimension(), -1);
    boundary_ranks_.assign(top + 2, -2);
    degree_.resize(top + 2);
}

int ChainSystem::top_dim() const { return K_.dimension(); }

int ChainSystem::n_cells(int d) const {
    return static_cast<int>(K_.simplices(d).size());
}

int ChainSystem::boundary_rank(int d) const {
    if (d <= 0 || d > top_dim())
        return 0;
    if (boundary_ranks_[d] == -2)
        boundary_ranks_[d] = rank_q(boundary_matrix(K_, d, false), limits_);
    return boundary_ranks_[d];
}

int ChainSystem::betti(int d) const {
    if (d < 0 || d > top_dim())
        return 0;
    return n_cells(d) - boundary_rank(d) - boundary_rank(d + 1);
}

ChainSystem::DegreeData& ChainSystem::degree_data(int d) const {
    if (d < 0 || d >= static_cast<int>(degree_.size()))
        throw Error("chain system degree out of range");
    auto& slot = degree_[d];
    if (slot)
        return *slot;
    slot = std::make_shared<DegreeData>();
    DegreeData& dd = *slot;
    const int n = n_cells(d);

    if (d == 0) {
        dd.dim0_shortcut = true;
        dd.vertex_component.assign(n, -1);
        auto comps = K_.component_vertex_sets();
        dd.n_components = static_cast<int>(comps.size());
        for (int ci = 0; ci < dd.n_components; ++ci)
            for (int v : comps[ci])
                dd.vertex_component[v] = ci;
        return dd;
    }

    // cycle basis: kernel of d_d via dense RREF over Q
    const std::size_t cell_budget =
        static_cast<std::size_t>(n) * std::max(n_cells(d - 1), 1);
    if (cell_budget > limits_.max_cells * 4)
        throw ResourceLimit("chain system too large for cycle bases");
    SparseZMatrix bd = boundary_matrix(K_, d, false);
    std::vector<std::vector<mpq_class>> m(
        bd.rows, std::vector<mpq_class>(n, 0));
    for (int r = 0; r < bd.rows; ++r)
        for (const auto& [c, v] : bd.entries[r])
            m[r][c] = mpq_class(v);
    // forward elimination, tracking pivot columns
    std::vector<int> pivot_col;
    int lead = 0;
    for (int col = 0; col < n && lead < bd.rows; ++col) {
        int sel = -1;
        for (int r = lead; r < bd.rows; ++r)
            if (m[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel < 0)
            continue;
        std::swap(m[sel], m[lead]);
        mpq_class p = m[lead][col];
        for (int c2 = col; c2 < n; ++c2)
            m[lead][c2] /= p;
        for (int r = 0; r < bd.rows; ++r) {
            if (r == lead || m[r][col] == 0)
                continue;
            mpq_class f = m[r][col];
            for (int c2 = col; c2 < n; ++c2)
                m[r][c2] -= f * m[lead][c2];
        }
        pivot_col.push_back(col);
        ++lead;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col)
        is_pivot[c] = true;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<mpq_class> z(n, 0);
        z[free] = 1;
        for (std::size_t pi = 0; pi < pivot_col.size(); ++pi)
            z[pivot_col[pi]] = -m[pi][free];
        dd.cycle_basis.push_back(std::move(z));
    }

    // boundary space im d_{d+1}
    if (d + 1 <= top_dim()) {
        SparseZMatrix up = boundary_matrix(K_, d + 1, false);
        for (int c = 0; c < up.cols; ++c) {
            std::vector<mpq_class> col(n, 0);
            for (int r = 0; r < up.rows; ++r)
                for (const auto& [cc, v] : up.entries[r])
                    if (cc == c)
                        col[r] = mpq_class(v);
            echelon_insert(std::move(col), dd.boundary_echelon);
        }
    }
    dd.combined = dd.boundary_echelon;
    for (const auto& z : dd.cycle_basis) {
        int pivot = echelon_insert(z, dd.combined);
        if (pivot >= 0)
            dd.rep_positions.push_back(static_cast<int>(dd.combined.size()) - 1);
    }
    return dd;
}

const std::vector<std::vector<mpq_class>>& ChainSystem::cycle_basis(int d) const {
    DegreeData& dd = degree_data(d);
    if (dd.dim0_shortcut && dd.cycle_basis.empty()) {
        const int n = n_cells(0);
        for (int v = 0; v < n; ++v) {
            std::vector<mpq_class> z(n, 0);
            z[v] = 1;
            dd.cycle_basis.push_back(std::move(z));
        }
    }
    return dd.cycle_basis;
}

std::vector<mpq_class> ChainSystem::homology_coordinates(
    int d, const std::vector<mpq_class>& cycle) const {
    DegreeData& dd = degree_data(d);
    if (dd.dim0_shortcut) {
        // H_0 coordinate = total coefficient per component
        std::vector<mpq_class> out(dd.n_components, 0);
        for (std::size_t v = 0; v < cycle.size(); ++v)
            if (cycle[v] != 0)
                out[dd.vertex_component[v]] += cycle[v];
        return out;
    }
    std::vector<mpq_class> vec = cycle;
    std::vector<mpq_class> coeffs = echelon_reduce(vec, dd.combined);
    for (const mpq_class& v : vec)
        if (v != 0)
            throw Error("homology_coordinates: input is not a cycle");
    std::vector<mpq_class> out;
    for (int pos : dd.rep_positions)
        out.push_back(coeffs[pos]);
    return out;
}

// ---------------------------------------------------------------------------
// Induced maps.

namespace {

// dense chain-level image of a cycle under a vertex map
std::vector<mpq_class> push_chain(const VertexMap& f, int d,
                                  const SimplicialComplex& A,
                                  const SimplicialComplex& B,
                                  const std::vector<mpq_class>& chain) {
    const auto& acells = A.simplices(d);
    const auto& bcells = B.simplices(d);
    std::map<Simplex, int> bindex;
    for (int i = 0; i < static_cast<int>(bcells.size()); ++i)
        bindex[bcells[i]] = i;
    std::vector<mpq_class> out(bcells.size(), 0);
    for (std::size_t i = 0; i < acells.size(); ++i) {
        if (chain[i] == 0)
            continue;
        Simplex img;
        for (int v : acells[i])
            img.push_back(f.image[v]);
        // parity of the sort; repeated vertices collapse to zero
        int sign = 1;
        for (std::size_t a = 0; a < img.size(); ++a)
            for (std::size_t b = a + 1; b < img.size(); ++b) {
                if (img[a] == img[b])
                    sign = 0;
                else if (img[a] > img[b])
                    sign = -sign;
            }
        if (sign == 0)
            continue;
        Simplex key = img;
        std::sort(key.begin(), key.end());
        auto it = bindex.find(key);
        if (it == bindex.end())
            throw Error("vertex map does not send simplices to simplices");
        out[it->second] += sign * chain[i];
    }
    return out;
}

} // namespace

std::vector<std::vector<mpq_class>> homology_rep_cycles(ChainSystem& A, int d) {
    std::vector<std::vector<mpq_class>> reps;
    if (A.betti(d) == 0)
        return reps;
    // reduce the cycle basis to homology coordinates and keep a maximal
    // independent set
    const auto& basis = A.cycle_basis(d);
    std::vector<std::pair<int, std::vector<mpq_class>>> seen;
    for (const auto& z : basis) {
        auto coords = A.homology_coordinates(d, z);
        bool zero = std::all_of(coords.begin(), coords.end(),
                                [](const mpq_class& v) { return v == 0; });
        if (zero)
            continue;
        if (echelon_insert(coords, seen) < 0)
            continue;
        reps.push_back(z);
        if (static_cast<int>(reps.size()) == A.betti(d))
            break;
    }
    return reps;
}

std::vector<mpq_class> induced_image_coords(const VertexMap& f, ChainSystem& B,
                                            int d,
                                            const std::vector<mpq_class>& cycle) {
    auto img = push_chain(f, d, *f.from, B.complex(), cycle);
    return B.homology_coordinates(d, img);
}

std::vector<std::vector<mpq_class>> induced_map_matrix(const VertexMap& f,
                                                       ChainSystem& A,
                                                       ChainSystem& B, int d) {
    std::vector<std::vector<mpq_class>> cols;
    if (A.betti(d) == 0 || B.betti(d) == 0)
        return cols;
    for (const auto& z : homology_rep_cycles(A, d))
        cols.push_back(induced_image_coords(f, B, d, z));
    return cols;
}

int induced_map_rank(const VertexMap& f, ChainSystem& A, ChainSystem& B,
                     int d) {
    if (A.betti(d) == 0 || B.betti(d) == 0)
        return 0;
    return dense_rank_q(induced_map_matrix(f, A, B, d));
}

int dense_rank_q(std::vector<std::vector<mpq_class>> cols) {
    // columns as vectors; echelonize
    std::vector<std::pair<int, std::vector<mpq_class>>> echelon;
    int rank = 0;
    for (auto& col : cols)
        if (echelon_insert(std::move(col), echelon) >= 0)
            ++rank;
    return rank;
}

} // namespace dh
