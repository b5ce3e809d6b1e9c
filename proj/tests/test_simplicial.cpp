#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dh/homology.hpp"
#include "dh/io.hpp"
#include "dh/simplicial.hpp"
#include "fixtures.hpp"

using namespace dh;

namespace {

HomologyProfile reduced_h(const SimplicialComplex& K) {
    return homology(K, true);
}

// second disjoint cycle with fresh labels
SimplicialComplex cycle_w(int n) {
    std::vector<std::string> labels;
    std::vector<Simplex> facets;
    for (int i = 0; i < n; ++i) {
        labels.push_back("w" + std::to_string(i));
        facets.push_back({i, (i + 1) % n});
    }
    return SimplicialComplex::from_facets(std::move(labels), std::move(facets));
}

// hemi-icosahedron: the 6-vertex triangulation of the projective plane
SimplicialComplex projective_plane() {
    return SimplicialComplex::from_facets(
        {"1", "2", "3", "4", "5", "6"},
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
         {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}});
}

} // namespace

TEST_CASE("construction normalizes facets") {
    auto K = SimplicialComplex::from_facets(
        {"a", "b", "c"}, {{0, 1}, {1, 0}, {0}, {0, 1, 2}});
    CHECK(K.facets().size() == 1); // everything inside the triangle
    CHECK(K.dimension() == 2);
    CHECK(K.total_simplices() == 7);

    // uncovered vertices become isolated points
    auto L = SimplicialComplex::from_facets({"a", "b"}, {{0}});
    CHECK(L.facets().size() == 2);
}

TEST_CASE("homology of standard examples") {
    SUBCASE("a point is reduced-acyclic") {
        CHECK(reduced_h(fixtures::point_complex()).acyclic());
    }
    SUBCASE("tetrahedron boundary is S^2") {
        HomologyProfile h = reduced_h(fixtures::tetrahedron_boundary());
        CHECK(h.betti == std::vector<int>{0, 0, 1});
        CHECK(h.torsion[0].empty());
        CHECK(h.torsion[1].empty());
    }
    SUBCASE("5-cycle has reduced H_1 = Z") {
        // the 5x5 boundary matrix has rank 4: five edges, one cycle
        HomologyProfile h = reduced_h(fixtures::cycle_complex(5));
        CHECK(h.betti == std::vector<int>{0, 1});
    }
    SUBCASE("unreduced homology counts components") {
        HomologyProfile h = homology(fixtures::two_points(), false);
        CHECK(h.betti == std::vector<int>{2});
    }
    SUBCASE("torsion: the projective plane has H_1 = Z/2") {
        HomologyProfile h = reduced_h(projective_plane());
        CHECK(h.betti == std::vector<int>{0, 0, 0});
        REQUIRE(h.torsion[1].size() == 1);
        CHECK(h.torsion[1][0] == 2);
    }
}

TEST_CASE("links") {
    auto tetra = fixtures::tetrahedron_boundary();
    SUBCASE("link of a vertex in the tetrahedron boundary is a 3-cycle") {
        SimplicialComplex lk = tetra.link({0});
        CHECK(lk.n_vertices() == 3);
        CHECK(lk.f_vector() == std::vector<std::size_t>{3, 3});
    }
    SUBCASE("link of an edge in the octahedron boundary is S^0") {
        SimplicialComplex lk = fixtures::octahedron_boundary().link({0, 2});
        CHECK(lk.n_vertices() == 2);
        CHECK(lk.dimension() == 0);
    }
    SUBCASE("link of the empty simplex is the complex itself") {
        CHECK(tetra.link({}) == tetra);
    }
    SUBCASE("missing simplex raises") {
        CHECK_THROWS_AS(fixtures::cycle_complex(4).link({0, 2}),
                        SimplexNotFound);
    }
    SUBCASE("link of link equals link of the union") {
        auto oct = fixtures::octahedron_boundary();
        auto inner = oct.link({0});
        auto a = inner.link({*inner.vertex_by_label("y")});
        auto b = oct.link({0, 2}); // vertex 2 is labelled "y"
        CHECK(a == b);
    }
}

TEST_CASE("flag tests") {
    CHECK(fixtures::cycle_complex(4).is_flag());
    CHECK_FALSE(fixtures::tetrahedron_boundary().is_flag());
    CHECK(fixtures::octahedron_boundary().is_flag());
    CHECK_FALSE(fixtures::cycle_complex(3).is_flag()); // hollow triangle
    CHECK(fixtures::solid_triangle().is_flag());
}

TEST_CASE("joins") {
    SUBCASE("S^0 * S^0 is a 4-cycle") {
        auto a = SimplicialComplex::from_facets({"p", "q"}, {{0}, {1}});
        auto b = SimplicialComplex::from_facets({"r", "s"}, {{0}, {1}});
        CHECK(isomorphic(a.join(b), fixtures::cycle_complex(4)));
    }
    SUBCASE("4-cycle * 4-cycle is the 16-cell boundary, f = (8,24,32,16)") {
        SimplicialComplex j = fixtures::cycle_complex(4).join(cycle_w(4));
        CHECK(j.f_vector() == std::vector<std::size_t>{8, 24, 32, 16});
        CHECK(j.euler_characteristic() == 0);
    }
    SUBCASE("join with the empty complex is the identity") {
        auto K = fixtures::cycle_complex(5);
        CHECK(K.join(SimplicialComplex{}) == K);
        CHECK(SimplicialComplex{}.join(K) == K);
    }
    SUBCASE("label collision raises") {
        auto K = fixtures::cycle_complex(4);
        CHECK_THROWS_AS(K.join(K), LabelCollision);
    }
    SUBCASE("join formula: reduced Betti numbers convolve") {
        auto a = fixtures::cycle_complex(5);
        auto b = cycle_w(5);
        HomologyProfile ha = reduced_h(a), hb = reduced_h(b);
        HomologyProfile hj = reduced_h(a.join(b));
        // beta~_k(A*B) = sum_{i+j=k-1} beta~_i(A) beta~_j(B)
        for (int k = 0; k < static_cast<int>(hj.betti.size()); ++k) {
            int expect = 0;
            for (int i = 0; i + 1 <= k; ++i)
                expect += ha.betti_at(i) * hb.betti_at(k - 1 - i);
            CHECK(hj.betti_at(k) == expect);
        }
    }
}

TEST_CASE("barycentric subdivision") {
    SUBCASE("edge becomes a path of two edges") {
        auto sd = fixtures::interval_complex().barycentric_subdivision();
        CHECK(sd.n_vertices() == 3);
        CHECK(sd.f_vector() == std::vector<std::size_t>{3, 2});
    }
    SUBCASE("triangle becomes six triangles") {
        auto sd = fixtures::solid_triangle().barycentric_subdivision();
        CHECK(sd.f_vector()[2] == 6);
    }
    SUBCASE("5-cycle becomes a 10-cycle") {
        auto sd = fixtures::cycle_complex(5).barycentric_subdivision();
        CHECK(isomorphic(sd, fixtures::cycle_complex(10)));
    }
    SUBCASE("homology is subdivision invariant") {
        for (const SimplicialComplex& K :
             {fixtures::octahedron_boundary(), fixtures::cycle_complex(6),
              fixtures::wheel_disk(5), projective_plane()}) {
            CHECK(reduced_h(K) == reduced_h(K.barycentric_subdivision()));
        }
    }
}

TEST_CASE("euler characteristic is the alternating betti sum") {
    for (const SimplicialComplex& K :
         {fixtures::octahedron_boundary(), fixtures::cycle_complex(6),
          fixtures::wheel_disk(5), fixtures::tetrahedron_boundary(),
          fixtures::two_points(), projective_plane()}) {
        HomologyProfile h = homology(K, false);
        long chi = 0;
        for (std::size_t k = 0; k < h.betti.size(); ++k)
            chi += (k % 2 == 0 ? 1 : -1) * h.betti[k];
        CHECK(K.euler_characteristic() == chi);
    }
}

TEST_CASE("sphere certificates") {
    SUBCASE("5-cycle is S^1") {
        auto cert = is_homology_sphere(fixtures::cycle_complex(5), 1);
        CHECK(cert.verdict == SphereVerdict::sphere);
    }
    SUBCASE("octahedron boundary is S^2") {
        auto cert = is_homology_sphere(fixtures::octahedron_boundary(), 2);
        CHECK(cert.verdict == SphereVerdict::sphere);
    }
    SUBCASE("4-cycle * 4-cycle is a homology 3-sphere, status unresolved") {
        auto cert =
            is_homology_sphere(fixtures::cycle_complex(4).join(cycle_w(4)), 3);
        CHECK(cert.all_pass());
        CHECK(cert.verdict == SphereVerdict::homology_sphere);
    }
    SUBCASE("projective plane is not a homology sphere") {
        auto cert = is_homology_sphere(projective_plane(), 2);
        CHECK(cert.pseudomanifold);
        CHECK_FALSE(cert.homology_matches);
    }
    SUBCASE("wheel disk is not a sphere but is a disk") {
        auto disk = fixtures::wheel_disk(5);
        CHECK(is_homology_sphere(disk, 2).verdict == SphereVerdict::fail);
        auto dc = is_homology_disk(disk, 2);
        CHECK(dc.pass);
        CHECK(dc.boundary_sphere.verdict == SphereVerdict::sphere);
    }
    SUBCASE("interval is a 1-disk") {
        CHECK(is_homology_disk(fixtures::interval_complex(), 1).pass);
    }
    SUBCASE("two disjoint circles fail connectivity") {
        std::vector<std::string> labels;
        std::vector<Simplex> facets;
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < 4; ++i) {
                labels.push_back("c" + std::to_string(c) + "v" +
                                 std::to_string(i));
                facets.push_back({c * 4 + i, c * 4 + (i + 1) % 4});
            }
        auto K = SimplicialComplex::from_facets(labels, facets);
        CHECK_FALSE(is_homology_sphere(K, 1).all_pass());
    }
}

TEST_CASE("isomorphism testing") {
    CHECK(isomorphic(fixtures::cycle_complex(6), fixtures::cycle_complex(6)));
    CHECK_FALSE(isomorphic(fixtures::cycle_complex(6),
                           fixtures::cycle_complex(7)));
    CHECK_FALSE(isomorphic(fixtures::tetrahedron_boundary(),
                           fixtures::octahedron_boundary()));
    // same f-vector, different complexes: 6-cycle vs two triangles
    auto two_triangles = SimplicialComplex::from_facets(
        {"a", "b", "c", "d", "e", "f"},
        {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    CHECK_FALSE(isomorphic(fixtures::cycle_complex(6), two_triangles));
}

TEST_CASE("complex file round trip") {
    auto K = fixtures::octahedron_boundary();
    SimplicialComplex back = parse_complex(format_complex(K));
    CHECK(back == K);
    CHECK_THROWS_AS(parse_complex("complex 2\na b\na c\n"), ParseError);
    CHECK_THROWS_AS(parse_complex("nope"), ParseError);
}

TEST_CASE("smith normal form spot checks") {
    // diag(2,3) normalizes to the divisor chain (1,6)
    SparseZMatrix m = SparseZMatrix::zero(2, 2);
    m.add(0, 0, 2);
    m.add(1, 1, 3);
    auto d = smith_diagonal(m);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 1);
    CHECK(d[1] == 6);

    SparseZMatrix z = SparseZMatrix::zero(3, 3);
    z.add(0, 0, 2);
    z.add(0, 1, 4);
    z.add(1, 0, 4);
    z.add(1, 1, 8);
    auto dz = smith_diagonal(z);
    REQUIRE(dz.size() == 1);
    CHECK(dz[0] == 2);
    CHECK(rank_q(z) == 1);
}

TEST_CASE("resource caps raise") {
    Limits tiny;
    tiny.max_cells = 1;
    auto big = fixtures::octahedron_boundary();
    CHECK_THROWS_AS(homology(big, true, tiny), ResourceLimit);
}
