#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "dh/hierarchy.hpp"
#include "fixtures.hpp"

using namespace dh;

namespace {

struct Setup {
    std::shared_ptr<Group> group;
    Nerve nerve;
    MirroredChamber chamber;
    ChamberComplex complex;
};

Setup make(const CoxeterSystem& W, int radius) {
    auto G = std::make_shared<Group>(W);
    Nerve N = build_nerve(W);
    MirroredChamber K = build_chamber(N);
    ChamberComplex U = basic_construction(G, K.model, radius);
    return Setup{G, std::move(N), std::move(K), std::move(U)};
}

FiniteQuotient dinfty_even(const CoxeterSystem& W) {
    return parse_quotient(W, "a: (1 2)\nb: (1 2)\n");
}

// regular permutation quotient: faithful, so the kernel is trivial
FiniteQuotient regular_quotient(Group& G, std::size_t order) {
    CayleyBall full = G.full_group(order + 1);
    REQUIRE(full.exhausted);
    const int n = static_cast<int>(full.elements.size());
    std::vector<std::vector<int>> images;
    for (Gen s = 0; s < G.system().rank(); ++s) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) {
            Element sw = G.reduce_raw(
                std::string(1, static_cast<char>(s)) +
                full.elements[i].raw());
            perm[i] = full.index.at(sw);
        }
        images.push_back(std::move(perm));
    }
    return FiniteQuotient::from_permutations(G.system(), images, n);
}

} // namespace

TEST_CASE("wall orbit families") {
    SUBCASE("infinite dihedral, even subgroup: two orbits of three walls") {
        Setup S = make(fixtures::dihedral_infinite(), 3);
        WallFamily fam =
            wall_orbit_family(S.complex, dinfty_even(S.group->system()));
        REQUIRE(fam.orbits.size() == 2);
        CHECK(fam.orbits[0].reflections.size() == 3);
        CHECK(fam.orbits[1].reflections.size() == 3);
    }
    SUBCASE("trivial kernel: one orbit per wall") {
        Setup S = make(fixtures::dihedral(3), 3);
        FiniteQuotient Q = regular_quotient(*S.group, 6);
        WallFamily fam = wall_orbit_family(S.complex, Q);
        CHECK(fam.orbits.size() == 3);
        for (const auto& o : fam.orbits)
            CHECK(o.reflections.size() == 1);
    }
    SUBCASE("type family groups by generator") {
        Setup S = make(fixtures::pentagon_racg(), 2);
        WallFamily fam = wall_type_family(S.complex);
        CHECK(fam.orbits.size() == 5);
        std::size_t panels = 0;
        for (const auto& o : fam.orbits)
            panels += o.panels.size();
        CHECK(panels == S.complex.active_panels().size());
    }
}

TEST_CASE("tidiness") {
    SUBCASE("infinite dihedral with the even-subgroup orbits is tidy") {
        Setup S = make(fixtures::dihedral_infinite(), 3);
        WallFamily fam =
            wall_orbit_family(S.complex, dinfty_even(S.group->system()));
        TidyCertificate c = check_tidy(S.complex, fam);
        CHECK(c.pass());
    }
    SUBCASE("pentagon type-orbits are tidy") {
        Setup S = make(fixtures::pentagon_racg(), 2);
        TidyCertificate c = check_tidy(S.complex, wall_type_family(S.complex));
        CHECK(c.pass());
    }
    SUBCASE("I_2(3): three crossing singleton orbits are tidy") {
        Setup S = make(fixtures::dihedral(3), 3);
        FiniteQuotient Q = regular_quotient(*S.group, 6);
        TidyCertificate c =
            check_tidy(S.complex, wall_orbit_family(S.complex, Q));
        CHECK(c.pass());
    }
    SUBCASE("forcing two crossing walls into one orbit fails") {
        Setup S = make(fixtures::dihedral(3), 3);
        auto walls = walls_in_ball(S.complex);
        REQUIRE(walls.size() == 3);
        WallFamily fam;
        WallOrbit merged;
        merged.label = "merged";
        for (int i : {0, 1}) {
            merged.reflections.push_back(walls[i].reflection);
            merged.panels.insert(merged.panels.end(), walls[i].panels.begin(),
                                 walls[i].panels.end());
        }
        std::sort(merged.panels.begin(), merged.panels.end());
        fam.orbits.push_back(merged);
        fam.orbits.push_back(
            WallOrbit{"rest", {walls[2].reflection}, walls[2].panels});
        TidyCertificate c = check_tidy(S.complex, fam);
        CHECK_FALSE(c.pass());
        CHECK_FALSE(c.intersections_acyclic);
        CHECK(!c.failures.empty());
    }
}

TEST_CASE("cut_open") {
    SUBCASE("cutting a middle wall of the dihedral line disconnects it") {
        Setup S = make(fixtures::dihedral_infinite(), 1); // 3 intervals
        auto walls = walls_in_ball(S.complex);
        REQUIRE(walls.size() == 2);
        ChamberComplex N = cut_open(S.complex, walls[0].panels);
        CHECK(N.components().size() == 2);
        CHECK_THROWS_AS(cut_open(N, walls[0].panels), PanelNotActive);
    }
    SUBCASE("cutting a wall not meeting a component leaves it unchanged") {
        Setup S = make(fixtures::dihedral_infinite(), 2); // 5 intervals
        auto walls = walls_in_ball(S.complex);
        ChamberComplex N1 = cut_open(S.complex, walls[0].panels);
        auto before = N1.components();
        ChamberComplex N2 = cut_open(N1, walls[3].panels);
        auto after = N2.components();
        CHECK(after.size() == before.size() + 1);
    }
}

TEST_CASE("Mayer-Vietoris certificates on single cuts") {
    SUBCASE("hexagon cut along one wall: the worked example") {
        Setup S = make(fixtures::dihedral(3), 3);
        auto walls = walls_in_ball(S.complex);
        ChamberComplex N = cut_open(S.complex, walls[0].panels);
        std::vector<int> scope(S.complex.n_chambers());
        std::iota(scope.begin(), scope.end(), 0);
        MayerVietorisCertificate c =
            verify_cut_mv(S.complex, N, walls[0].panels,
                          {walls[0].reflection}, scope);
        CHECK(c.pass());
        // the wall is a connected diameter; the cut leaves two arcs
        CHECK(c.dim_C[0] == 2);
        CHECK(c.dim_mid[0] == 3);
        CHECK(c.rank1[0] == 2);
        CHECK(c.rank2[0] == 1);
        CHECK(c.chi_M == 1);
        CHECK(c.chi_N == 2);
        CHECK(c.chi_F == 1);
    }
    SUBCASE("dihedral line cut") {
        Setup S = make(fixtures::dihedral_infinite(), 2);
        auto walls = walls_in_ball(S.complex);
        ChamberComplex N = cut_open(S.complex, walls[1].panels);
        std::vector<int> scope(S.complex.n_chambers());
        std::iota(scope.begin(), scope.end(), 0);
        MayerVietorisCertificate c = verify_cut_mv(
            S.complex, N, walls[1].panels, {walls[1].reflection}, scope);
        CHECK(c.pass());
        CHECK(c.chi_M == 1);
        CHECK(c.chi_N == 2);
        CHECK(c.chi_F == 1);
    }
}

TEST_CASE("full hierarchy runs") {
    SUBCASE("dihedral line, two even-subgroup orbits, ends in 7 chambers") {
        Setup S = make(fixtures::dihedral_infinite(), 3);
        WallFamily fam =
            wall_orbit_family(S.complex, dinfty_even(S.group->system()));
        HierarchyTrace t = run_hierarchy(S.complex, fam);
        CHECK(t.pass);
        CHECK(t.steps.size() == 2);
        CHECK(t.terminal.components == 7);
        CHECK(t.terminal.all_single_chambers);
        CHECK(t.terminal.all_match_end_model);
        for (const auto& step : t.steps) {
            CHECK(step.mv.pass());
            CHECK(step.residual_tidy);
            CHECK(step.mv.chi_M == step.mv.chi_N - step.mv.chi_F);
        }
    }
    SUBCASE("hexagon with the regular quotient: 3 cuts, 6 chambers") {
        Setup S = make(fixtures::dihedral(3), 3);
        FiniteQuotient Q = regular_quotient(*S.group, 6);
        HierarchyTrace t =
            run_hierarchy(S.complex, wall_orbit_family(S.complex, Q));
        CHECK(t.pass);
        CHECK(t.steps.size() == 3);
        CHECK(t.terminal.components == 6);
        CHECK(t.terminal.all_single_chambers);
        CHECK(t.terminal.all_match_end_model);
    }
    SUBCASE("pentagon ball r=2 with the mod-3 orbits") {
        Setup S = make(fixtures::pentagon_racg(), 2);
        FiniteQuotient Q =
            FiniteQuotient::reflection_mod_p(S.group->system(), 3);
        WallFamily fam = wall_orbit_family(S.complex, Q);
        HierarchyTrace t = run_hierarchy(S.complex, fam);
        CHECK(t.pass);
        CHECK(t.terminal.components == S.complex.n_chambers());
        CHECK(t.terminal.all_single_chambers);
        CHECK(t.terminal.all_match_end_model);
        for (const auto& step : t.steps) {
            CHECK(step.mv.pass());
            CHECK(step.residual_tidy);
        }
    }
    SUBCASE("order robustness: reversing the cut order, same terminal") {
        Setup S = make(fixtures::dihedral(3), 3);
        FiniteQuotient Q = regular_quotient(*S.group, 6);
        WallFamily fam = wall_orbit_family(S.complex, Q);
        HierarchyTrace forward = run_hierarchy(S.complex, fam);
        std::reverse(fam.orbits.begin(), fam.orbits.end());
        HierarchyTrace backward = run_hierarchy(S.complex, fam);
        CHECK(forward.terminal.components == backward.terminal.components);
        CHECK(forward.terminal.all_single_chambers ==
              backward.terminal.all_single_chambers);
    }
    SUBCASE("a non-tidy family raises TidyViolation unless forced") {
        Setup S = make(fixtures::dihedral(3), 3);
        auto walls = walls_in_ball(S.complex);
        WallFamily bad;
        WallOrbit merged;
        merged.label = "merged";
        for (const Wall& w : walls) {
            merged.reflections.push_back(w.reflection);
            merged.panels.insert(merged.panels.end(), w.panels.begin(),
                                 w.panels.end());
        }
        std::sort(merged.panels.begin(), merged.panels.end());
        bad.orbits.push_back(merged);
        CHECK_THROWS_AS(run_hierarchy(S.complex, bad), TidyViolation);
        HierarchyOptions opts;
        opts.force = true;
        opts.recheck_residual = false;
        HierarchyTrace t = run_hierarchy(S.complex, bad, opts);
        CHECK(t.terminal.components == 6); // cutting everything still works
    }
}

TEST_CASE("l:tidy preservation along corpus runs") {
    Setup S = make(fixtures::pentagon_racg(), 2);
    WallFamily fam = wall_type_family(S.complex);
    HierarchyTrace t = run_hierarchy(S.complex, fam);
    CHECK(t.pass);
    for (const auto& step : t.steps)
        CHECK(step.residual_tidy);
}

TEST_CASE("euler additivity ledger across every step") {
    Setup S = make(fixtures::pentagon_racg(), 2);
    FiniteQuotient Q = FiniteQuotient::reflection_mod_p(S.group->system(), 3);
    HierarchyTrace t =
        run_hierarchy(S.complex, wall_orbit_family(S.complex, Q));
    long chi = S.complex.realization().complex.euler_characteristic();
    for (const auto& step : t.steps) {
        CHECK(step.mv.chi_M == chi);
        chi = step.mv.chi_N;
        CHECK(step.mv.euler_ok);
    }
    // terminal: disjoint chambers, each contractible
    CHECK(chi == t.terminal.components);
}

TEST_CASE("induced hierarchies") {
    SUBCASE("restriction to a terminal single chamber is empty") {
        Setup S = make(fixtures::dihedral(3), 3);
        FiniteQuotient Q = regular_quotient(*S.group, 6);
        HierarchyTrace t =
            run_hierarchy(S.complex, wall_orbit_family(S.complex, Q));
        const int last = static_cast<int>(t.stages.size()) - 1;
        InducedHierarchy ind = induced_hierarchy(t, last, 0, &Q);
        CHECK(ind.trace.steps.empty());
        CHECK(ind.trace.terminal.components == 1);
        CHECK(ind.trace.terminal.all_single_chambers);
    }
    SUBCASE("dihedral line: restrict after the first cut to one half") {
        Setup S = make(fixtures::dihedral_infinite(), 3);
        FiniteQuotient Q = dinfty_even(S.group->system());
        HierarchyTrace t =
            run_hierarchy(S.complex, wall_orbit_family(S.complex, Q));
        REQUIRE(t.stages.size() >= 2);
        InducedHierarchy ind = induced_hierarchy(t, 1, 0, &Q);
        CHECK(ind.trace.pass);
        CHECK(!ind.trace.steps.empty());
        CHECK(ind.trace.terminal.all_single_chambers);
    }
    SUBCASE("pentagon: restriction re-certifies") {
        Setup S = make(fixtures::pentagon_racg(), 2);
        FiniteQuotient Q =
            FiniteQuotient::reflection_mod_p(S.group->system(), 3);
        HierarchyTrace t =
            run_hierarchy(S.complex, wall_orbit_family(S.complex, Q));
        InducedHierarchy ind = induced_hierarchy(t, 1, 0, &Q);
        CHECK(ind.trace.pass);
        for (const auto& step : ind.trace.steps)
            CHECK(step.mv.pass());
    }
    SUBCASE("bad component index raises") {
        Setup S = make(fixtures::dihedral(3), 3);
        FiniteQuotient Q = regular_quotient(*S.group, 6);
        HierarchyTrace t =
            run_hierarchy(S.complex, wall_orbit_family(S.complex, Q));
        CHECK_THROWS_AS(induced_hierarchy(t, 0, 99, &Q), NotAComponent);
        CHECK_THROWS_AS(induced_hierarchy(t, -1, 0, &Q), NotAComponent);
    }
}

TEST_CASE("induced map machinery handles nonzero degree-1 homology") {
    // annulus between two hexagons; the inner circle includes with H_1 rank 1
    std::vector<std::string> labels;
    std::vector<Simplex> facets;
    for (int i = 0; i < 6; ++i)
        labels.push_back("o" + std::to_string(i));
    for (int i = 0; i < 6; ++i)
        labels.push_back("i" + std::to_string(i));
    for (int i = 0; i < 6; ++i) {
        const int j = (i + 1) % 6;
        facets.push_back({i, j, 6 + i});
        facets.push_back({j, 6 + i, 6 + j});
    }
    auto annulus = SimplicialComplex::from_facets(labels, facets);
    auto circle = fixtures::cycle_complex(6);

    Limits limits;
    ChainSystem CA(circle, limits), CB(annulus, limits);
    CHECK(CB.betti(1) == 1);

    VertexMap inclusion;
    inclusion.from = &circle;
    inclusion.to = &annulus;
    for (int i = 0; i < 6; ++i)
        inclusion.image.push_back(6 + i); // inner ring
    CHECK(induced_map_rank(inclusion, CA, CB, 1) == 1);
    CHECK(induced_map_rank(inclusion, CA, CB, 0) == 1);

    // collapsing the circle to a vertex kills H_1
    VertexMap collapse;
    collapse.from = &circle;
    collapse.to = &annulus;
    collapse.image.assign(6, 0);
    CHECK(induced_map_rank(collapse, CA, CB, 1) == 0);
    CHECK(induced_map_rank(collapse, CA, CB, 0) == 1);
}
