// Shared corpus builders for the test suites.

#ifndef DH_TESTS_FIXTURES_HPP
#define DH_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "dh/coxeter.hpp"
#include "dh/simplicial.hpp"

namespace fixtures {

using dh::CoxeterSystem;
using dh::infinite_order;
using dh::Simplex;
using dh::SimplicialComplex;

inline std::vector<std::string> letters(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i)
        out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

inline CoxeterSystem from_orders(std::vector<std::vector<int>> m) {
    const int n = static_cast<int>(m.size());
    return CoxeterSystem(letters(n), std::move(m));
}

inline CoxeterSystem dihedral_infinite() {
    return from_orders({{1, infinite_order}, {infinite_order, 1}});
}

inline CoxeterSystem dihedral(int m) {
    return from_orders({{1, m}, {m, 1}});
}

// right-angled system on a cycle graph: adjacent generators commute
inline CoxeterSystem cycle_racg(int n) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, infinite_order));
    for (int i = 0; i < n; ++i) {
        m[i][i] = 1;
        m[i][(i + 1) % n] = 2;
        m[(i + 1) % n][i] = 2;
    }
    return from_orders(std::move(m));
}

inline CoxeterSystem pentagon_racg() { return cycle_racg(5); }
inline CoxeterSystem square_racg() { return cycle_racg(4); }

inline CoxeterSystem triangle_group(int p, int q, int r) {
    return from_orders({{1, p, r}, {p, 1, q}, {r, q, 1}});
}

inline CoxeterSystem a3() { return triangle_group(3, 3, 2); }
inline CoxeterSystem b3() { return triangle_group(4, 3, 2); }
inline CoxeterSystem h3() { return triangle_group(5, 3, 2); }
inline CoxeterSystem hyperbolic237() { return triangle_group(2, 3, 7); }

// right-angled system whose defining graph is the octahedron (three
// antipodal non-commuting pairs)
inline CoxeterSystem octahedral_racg() {
    const int n = 6;
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
    for (int i = 0; i < n; ++i)
        m[i][i] = 1;
    for (int i = 0; i < 3; ++i) {
        m[i][i + 3] = infinite_order;
        m[i + 3][i] = infinite_order;
    }
    return from_orders(std::move(m));
}

// right-angled system whose nerve is the join of an m-cycle and an n-cycle
inline CoxeterSystem cycle_join_racg(int a, int b) {
    const int n = a + b;
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
    for (int i = 0; i < n; ++i)
        m[i][i] = 1;
    auto disconnect = [&](int base, int k) {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                const bool adjacent = (j == i + 1) || (i == 0 && j == k - 1);
                if (!adjacent) {
                    m[base + i][base + j] = infinite_order;
                    m[base + j][base + i] = infinite_order;
                }
            }
    };
    disconnect(0, a);
    disconnect(a, b);
    return from_orders(std::move(m));
}

// ---- complexes ----

inline std::vector<std::string> names(std::initializer_list<const char*> n) {
    return std::vector<std::string>(n.begin(), n.end());
}

inline SimplicialComplex cycle_complex(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back("v" + std::to_string(i));
    std::vector<Simplex> facets;
    for (int i = 0; i < n; ++i)
        facets.push_back({i, (i + 1) % n});
    return SimplicialComplex::from_facets(std::move(labels), std::move(facets));
}

inline SimplicialComplex point_complex() {
    return SimplicialComplex::from_facets({"p"}, {{0}});
}

inline SimplicialComplex two_points() {
    return SimplicialComplex::from_facets({"p", "q"}, {{0}, {1}});
}

inline SimplicialComplex tetrahedron_boundary() {
    return SimplicialComplex::from_facets(
        {"a", "b", "c", "d"}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

inline SimplicialComplex octahedron_boundary() {
    // vertices 0/1, 2/3, 4/5 are the antipodal pairs
    std::vector<Simplex> facets;
    for (int i : {0, 1})
        for (int j : {2, 3})
            for (int k : {4, 5})
                facets.push_back({i, j, k});
    return SimplicialComplex::from_facets({"x", "X", "y", "Y", "z", "Z"},
                                          std::move(facets));
}

inline SimplicialComplex solid_triangle() {
    return SimplicialComplex::from_facets({"a", "b", "c"}, {{0, 1, 2}});
}

// disk: cone over an n-cycle (hub vertex "c")
inline SimplicialComplex wheel_disk(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back("v" + std::to_string(i));
    labels.push_back("c");
    std::vector<Simplex> facets;
    for (int i = 0; i < n; ++i)
        facets.push_back({i, (i + 1) % n, n});
    return SimplicialComplex::from_facets(std::move(labels), std::move(facets));
}

inline SimplicialComplex interval_complex() {
    return SimplicialComplex::from_facets({"p", "q"}, {{0, 1}});
}

} // namespace fixtures

#endif
