#include "dh/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace dh {

namespace {

std::string element_tag(const CoxeterSystem& W, const Element& e) {
    if (e.is_identity())
        return "e";
    std::string out;
    for (int i = 0; i < e.length(); ++i) {
        if (i)
            out += '.';
        out += W.name_of(e.letter(i));
    }
    return out;
}

struct SimpleUF {
    std::vector<int> parent;
    explicit SimpleUF(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::vector<int>> scoped_components(const ChamberComplex& M,
                                                const std::vector<int>& scope) {
    std::vector<int> local(M.n_chambers(), -1);
    for (std::size_t i = 0; i < scope.size(); ++i)
        local[scope[i]] = static_cast<int>(i);
    SimpleUF uf(static_cast<int>(scope.size()));
    for (std::size_t i = 0; i < scope.size(); ++i) {
        const int c = scope[i];
        for (Gen s = 0; s < M.system().rank(); ++s) {
            const int d = M.neighbor(c, s);
            if (d < 0 || local[d] < 0)
                continue;
            if (M.panel_active({c, s}))
                uf.unite(static_cast<int>(i), local[d]);
        }
    }
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < scope.size(); ++i)
        groups[uf.find(static_cast<int>(i))].push_back(scope[i]);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups)
        out.push_back(std::move(members));
    return out;
}

// all simplices of a realized subcomplex in parent-vertex coordinates
std::set<Simplex> parent_simplex_set(const RealizedSubcomplex& sub) {
    std::set<Simplex> out;
    for (const Simplex& f : sub.complex.facets()) {
        const int k = static_cast<int>(f.size());
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            Simplex s;
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i))
                    s.push_back(sub.to_parent[f[i]]);
            std::sort(s.begin(), s.end());
            out.insert(std::move(s));
        }
    }
    return out;
}

SimplicialComplex complex_from_parent_simplices(const SimplicialComplex& parent,
                                                const std::set<Simplex>& simp) {
    std::set<int> used;
    for (const Simplex& s : simp)
        used.insert(s.begin(), s.end());
    std::map<int, int> remap;
    std::vector<std::string> labels;
    for (int v : used) {
        remap[v] = static_cast<int>(labels.size());
        labels.push_back(parent.label(v));
    }
    std::vector<Simplex> facets;
    for (const Simplex& s : simp) {
        Simplex g;
        for (int v : s)
            g.push_back(remap.at(v));
        facets.push_back(std::move(g));
    }
    return SimplicialComplex::from_facets(std::move(labels), std::move(facets));
}

// carrier relative to an arbitrary realization of a chamber subset
RealizedSubcomplex realized_carrier(const MirroredSpace& model,
                                    const Realization& R,
                                    const std::vector<Panel>& panels) {
    std::set<Simplex> facets;
    for (const Panel& p : panels) {
        for (const Simplex& f : model.mirror_facets[p.gen]) {
            Simplex g;
            for (int x : f)
                g.push_back(R.chamber_vertex[p.chamber][x]);
            std::sort(g.begin(), g.end());
            facets.insert(std::move(g));
        }
    }
    RealizedSubcomplex out;
    for (const Simplex& f : facets)
        out.parent_vertices.insert(f.begin(), f.end());
    std::map<int, int> remap;
    std::vector<std::string> labels;
    for (int v : out.parent_vertices) {
        remap[v] = static_cast<int>(labels.size());
        labels.push_back(R.complex.label(v));
        out.to_parent.push_back(v);
    }
    std::vector<Simplex> local;
    for (const Simplex& f : facets) {
        Simplex g;
        for (int v : f)
            g.push_back(remap.at(v));
        local.push_back(std::move(g));
    }
    out.complex =
        SimplicialComplex::from_facets(std::move(labels), std::move(local));
    return out;
}

std::set<Simplex> closure_of_faces(const std::vector<Simplex>& faces) {
    std::set<Simplex> out;
    for (const Simplex& f : faces) {
        const int k = static_cast<int>(f.size());
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            Simplex s;
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i))
                    s.push_back(f[i]);
            out.insert(std::move(s));
        }
    }
    return out;
}

} // namespace

WallFamily wall_orbit_family(const ChamberComplex& U, const FiniteQuotient& Q) {
    const auto walls = walls_in_ball(U);
    Group& G = U.group();
    std::map<Element, int> index;
    for (std::size_t i = 0; i < walls.size(); ++i)
        index[walls[i].reflection] = static_cast<int>(i);

    SimpleUF uf(static_cast<int>(walls.size()));
    for (const Element& g : U.ball().elements) {
        if (g.is_identity() || !Q.kernel_contains(g))
            continue;
        for (std::size_t i = 0; i < walls.size(); ++i) {
            Element r2 = G.conjugate(g, walls[i].reflection);
            auto it = index.find(r2);
            if (it != index.end())
                uf.unite(static_cast<int>(i), it->second);
        }
    }
    std::map<int, std::vector<int>> classes;
    for (std::size_t i = 0; i < walls.size(); ++i)
        classes[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));

    WallFamily fam;
    for (auto& [root, members] : classes) {
        WallOrbit orbit;
        for (int i : members) {
            orbit.reflections.push_back(walls[i].reflection);
            orbit.panels.insert(orbit.panels.end(), walls[i].panels.begin(),
                                walls[i].panels.end());
        }
        std::sort(orbit.reflections.begin(), orbit.reflections.end());
        std::sort(orbit.panels.begin(), orbit.panels.end());
        orbit.label =
            "orbit(" + element_tag(U.system(), orbit.reflections.front()) + ")";
        fam.orbits.push_back(std::move(orbit));
    }
    std::sort(fam.orbits.begin(), fam.orbits.end(),
              [](const WallOrbit& a, const WallOrbit& b) {
                  return a.reflections.front() < b.reflections.front();
              });
    return fam;
}

WallFamily wall_type_family(const ChamberComplex& U) {
    const auto walls = walls_in_ball(U);
    std::map<Gen, WallOrbit> by_type;
    for (const Wall& w : walls) {
        if (w.panel_types.size() != 1)
            throw Error("wall crosses mirrors of several types; type-orbit "
                        "families need a type-preserving (even) system");
        const Gen s = w.panel_types[0];
        WallOrbit& orbit = by_type[s];
        orbit.label = "type(" + U.system().name_of(s) + ")";
        orbit.reflections.push_back(w.reflection);
        orbit.panels.insert(orbit.panels.end(), w.panels.begin(),
                            w.panels.end());
    }
    WallFamily fam;
    for (auto& [s, orbit] : by_type) {
        std::sort(orbit.reflections.begin(), orbit.reflections.end());
        std::sort(orbit.panels.begin(), orbit.panels.end());
        fam.orbits.push_back(std::move(orbit));
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Tidiness.

TidyCertificate check_tidy(const ChamberComplex& M, const WallFamily& E,
                           const Limits& limits) {
    TidyCertificate cert;
    for (const WallOrbit& orbit : E.orbits)
        for (const Panel& p : orbit.panels)
            if (!M.panel_active(p))
                throw Error("tidy check: family panel is not active in M");

    const Realization& R = M.realization();
    const std::set<Simplex> boundary_set = closure_of_faces(
        R.complex.free_faces());
    std::set<int> boundary_vertices;
    for (const Simplex& s : boundary_set)
        boundary_vertices.insert(s.begin(), s.end());

    // 1. components of M acyclic
    cert.components_acyclic = true;
    for (const auto& comp : M.components()) {
        Realization r = M.realize_chambers(comp);
        HomologyProfile h = homology(r.complex, true, limits);
        if (!h.acyclic()) {
            cert.components_acyclic = false;
            cert.failures.push_back("component of M not acyclic: " +
                                    h.to_string());
        }
    }

    // carriers per orbit as parent simplex sets
    std::vector<RealizedSubcomplex> carriers;
    std::vector<std::set<Simplex>> carrier_sets;
    for (const WallOrbit& orbit : E.orbits) {
        carriers.push_back(realized_carrier(M.model(), R, orbit.panels));
        carrier_sets.push_back(parent_simplex_set(carriers.back()));
    }

    // 2. intersections (including singletons) have acyclic components
    cert.intersections_acyclic = true;

    // an orbit whose own walls meet is not a codimension-one submanifold:
    // distinct walls within one family member must be vertex-disjoint
    {
        Group& G0 = M.group();
        for (const WallOrbit& orbit : E.orbits) {
            std::map<Element, std::set<int>> per_wall;
            for (const Panel& p : orbit.panels) {
                Element r = G0.conjugate(M.chamber(p.chamber), p.gen);
                auto c = realized_carrier(M.model(), R, {p});
                per_wall[r].insert(c.parent_vertices.begin(),
                                   c.parent_vertices.end());
            }
            std::vector<const std::set<int>*> sets;
            std::vector<const Element*> refs;
            for (const auto& [r, verts] : per_wall) {
                sets.push_back(&verts);
                refs.push_back(&r);
            }
            for (std::size_t a = 0; a < sets.size(); ++a)
                for (std::size_t b = a + 1; b < sets.size(); ++b) {
                    std::vector<int> shared;
                    std::set_intersection(sets[a]->begin(), sets[a]->end(),
                                          sets[b]->begin(), sets[b]->end(),
                                          std::back_inserter(shared));
                    if (!shared.empty()) {
                        cert.intersections_acyclic = false;
                        cert.failures.push_back(
                            "orbit " + orbit.label + ": walls " +
                            element_tag(M.system(), *refs[a]) + " and " +
                            element_tag(M.system(), *refs[b]) +
                            " share vertex " +
                            R.complex.label(shared.front()));
                    }
                }
        }
    }
    struct Node {
        std::vector<int> members;
        std::set<Simplex> simplices;
    };
    std::vector<Node> level;
    for (std::size_t i = 0; i < carrier_sets.size(); ++i)
        level.push_back({{static_cast<int>(i)}, carrier_sets[i]});
    while (!level.empty()) {
        for (const Node& node : level) {
            SimplicialComplex inter =
                complex_from_parent_simplices(R.complex, node.simplices);
            for (const SimplicialComplex& comp : inter.components()) {
                HomologyProfile h = homology(comp, true, limits);
                if (!h.acyclic()) {
                    cert.intersections_acyclic = false;
                    std::ostringstream os;
                    os << "intersection of orbits {";
                    for (std::size_t k = 0; k < node.members.size(); ++k)
                        os << (k ? "," : "") << E.orbits[node.members[k]].label;
                    os << "} has a non-acyclic component: " << h.to_string();
                    cert.failures.push_back(os.str());
                }
            }
        }
        std::vector<Node> next;
        for (const Node& node : level)
            for (int j = node.members.back() + 1;
                 j < static_cast<int>(carrier_sets.size()); ++j) {
                Node n;
                n.members = node.members;
                n.members.push_back(j);
                std::set_intersection(
                    node.simplices.begin(), node.simplices.end(),
                    carrier_sets[j].begin(), carrier_sets[j].end(),
                    std::inserter(n.simplices, n.simplices.begin()));
                if (!n.simplices.empty())
                    next.push_back(std::move(n));
            }
        level = std::move(next);
    }

    // 3. E_i meets the boundary exactly in its own boundary
    cert.boundary_condition = true;
    for (std::size_t i = 0; i < carriers.size(); ++i) {
        std::vector<Simplex> free = carriers[i].complex.free_faces();
        for (Simplex& f : free)
            for (int& v : f)
                v = carriers[i].to_parent[v];
        std::set<Simplex> carrier_boundary = closure_of_faces(free);
        std::set<Simplex> met;
        std::set_intersection(carrier_sets[i].begin(), carrier_sets[i].end(),
                              boundary_set.begin(), boundary_set.end(),
                              std::inserter(met, met.begin()));
        if (met != carrier_boundary) {
            cert.boundary_condition = false;
            cert.failures.push_back("orbit " + E.orbits[i].label +
                                    ": carrier boundary differs from its "
                                    "intersection with the boundary of M");
        }
    }

    // 4. local arrangement at interior vertices
    cert.local_arrangement = true;
    Group& G = M.group();
    // per-wall carriers: regroup orbit panels by reflection
    std::map<Element, std::vector<Panel>> wall_panels;
    for (const WallOrbit& orbit : E.orbits)
        for (const Panel& p : orbit.panels)
            wall_panels[G.conjugate(M.chamber(p.chamber), p.gen)].push_back(p);
    std::size_t family_panels = 0;
    for (const auto& [r, panels] : wall_panels)
        family_panels += panels.size();
    const bool full_coverage = family_panels == M.active_panels().size();

    std::map<int, std::vector<const Element*>> walls_through;
    for (const auto& [r, panels] : wall_panels) {
        RealizedSubcomplex c = realized_carrier(M.model(), R, panels);
        for (int v : c.parent_vertices)
            walls_through[v].push_back(&r);
    }
    for (int v = 0; v < R.complex.n_vertices(); ++v) {
        if (boundary_vertices.count(v))
            continue;
        const auto [chamber, x] = R.representative[v];
        const GenSet& T = M.model().S_of[x];
        const Element& u = M.chamber(chamber);
        const Element u_inv = G.inverse(u);
        auto it = walls_through.find(v);
        const std::size_t through = (it == walls_through.end())
                                        ? 0
                                        : it->second.size();
        if (it != walls_through.end()) {
            for (const Element* r : it->second) {
                Element local = G.conjugate(u_inv, *r);
                if (!Group::in_parabolic(local, T)) {
                    cert.local_arrangement = false;
                    cert.failures.push_back(
                        "wall " + element_tag(M.system(), *r) +
                        " passes through vertex " + R.complex.label(v) +
                        " outside its stabilizer arrangement");
                }
            }
        }
        if (full_coverage) {
            const std::size_t expected =
                T.empty() ? 0 : G.parabolic_reflections(T, 1 << 16).size();
            if (through != expected) {
                cert.local_arrangement = false;
                cert.failures.push_back(
                    "vertex " + R.complex.label(v) + " lies on " +
                    std::to_string(through) + " walls, stabilizer has " +
                    std::to_string(expected) + " reflections");
            }
        }
    }
    return cert;
}

ChamberComplex cut_open(const ChamberComplex& M, const std::vector<Panel>& F) {
    return M.deactivate(F);
}

// ---------------------------------------------------------------------------
// Mayer-Vietoris.

MayerVietorisCertificate verify_cut_mv(const ChamberComplex& M,
                                       const ChamberComplex& N,
                                       const std::vector<Panel>& panels,
                                       const std::vector<Element>& reflections,
                                       const std::vector<int>& scope,
                                       const Limits& limits) {
    (void)reflections;
    MayerVietorisCertificate cert;
    Group& G = M.group();

    // affected scoped components of M
    std::set<int> panel_chambers;
    for (const Panel& p : panels)
        panel_chambers.insert(p.chamber);
    std::vector<int> aff;
    for (const auto& comp : scoped_components(M, scope)) {
        bool touched = false;
        for (int c : comp)
            if (panel_chambers.count(c)) {
                touched = true;
                break;
            }
        if (touched)
            aff.insert(aff.end(), comp.begin(), comp.end());
    }
    std::sort(aff.begin(), aff.end());
    cert.affected_chambers = static_cast<int>(aff.size());

    Realization RM = M.realize_chambers(aff);
    Realization RN = N.realize_chambers(aff);

    RealizedSubcomplex F = realized_carrier(M.model(), RM, panels);

    // the two sides of the cut inside N
    std::set<Simplex> plus_facets, minus_facets;
    for (const Panel& p : panels) {
        const int c = p.chamber;
        const int d = M.neighbor(c, p.gen);
        Element r = G.conjugate(M.chamber(c), p.gen);
        const int pos = identity_side(G, r, M.chamber(c)) ? c : d;
        const int neg = (pos == c) ? d : c;
        for (const Simplex& f : M.model().mirror_facets[p.gen]) {
            Simplex gp, gm;
            for (int x : f) {
                gp.push_back(RN.chamber_vertex[pos][x]);
                gm.push_back(RN.chamber_vertex[neg][x]);
            }
            std::sort(gp.begin(), gp.end());
            std::sort(gm.begin(), gm.end());
            plus_facets.insert(std::move(gp));
            minus_facets.insert(std::move(gm));
        }
    }
    auto side_complex = [&](const std::set<Simplex>& facets) {
        RealizedSubcomplex out;
        for (const Simplex& f : facets)
            out.parent_vertices.insert(f.begin(), f.end());
        std::map<int, int> remap;
        std::vector<std::string> labels;
        for (int v : out.parent_vertices) {
            remap[v] = static_cast<int>(labels.size());
            labels.push_back(RN.complex.label(v));
            out.to_parent.push_back(v);
        }
        std::vector<Simplex> local;
        for (const Simplex& f : facets) {
            Simplex g;
            for (int v : f)
                g.push_back(remap.at(v));
            local.push_back(std::move(g));
        }
        out.complex =
            SimplicialComplex::from_facets(std::move(labels), std::move(local));
        return out;
    };
    RealizedSubcomplex Fp = side_complex(plus_facets);
    RealizedSubcomplex Fm = side_complex(minus_facets);

    // vertex translations
    std::vector<int> n_to_m(RN.complex.n_vertices());
    for (int v = 0; v < RN.complex.n_vertices(); ++v) {
        const auto [chamber, x] = RN.representative[v];
        n_to_m[v] = RM.chamber_vertex[chamber][x];
    }
    std::map<int, int> f_local;
    for (std::size_t i = 0; i < F.to_parent.size(); ++i)
        f_local[F.to_parent[i]] = static_cast<int>(i);

    auto side_to_f = [&](const RealizedSubcomplex& side) {
        VertexMap vm;
        vm.from = &side.complex;
        vm.to = &F.complex;
        for (int v = 0; v < side.complex.n_vertices(); ++v)
            vm.image.push_back(f_local.at(n_to_m[side.to_parent[v]]));
        return vm;
    };
    auto side_to_n = [&](const RealizedSubcomplex& side) {
        VertexMap vm;
        vm.from = &side.complex;
        vm.to = &RN.complex;
        vm.image = side.to_parent;
        return vm;
    };
    VertexMap f_to_m{&F.complex, &RM.complex, F.to_parent};
    VertexMap n_to_m_map{&RN.complex, &RM.complex, n_to_m};
    VertexMap p_to_f = side_to_f(Fp), m_to_f = side_to_f(Fm);
    VertexMap p_to_n = side_to_n(Fp), m_to_n = side_to_n(Fm);

    ChainSystem SM(RM.complex, limits), SN(RN.complex, limits),
        SF(F.complex, limits), SP(Fp.complex, limits), SQ(Fm.complex, limits);

    int top = std::max({RM.complex.dimension(), RN.complex.dimension(),
                        F.complex.dimension(), 0});

    cert.composite_zero = true;
    for (int k = 0; k <= top; ++k) {
        const int bP = SP.betti(k), bQ = SQ.betti(k);
        const int bF = SF.betti(k), bN = SN.betti(k), bM = SM.betti(k);
        cert.dim_C.push_back(bP + bQ);
        cert.dim_mid.push_back(bF + bN);
        cert.dim_M.push_back(bM);
        cert.betti_F.push_back(bF);
        cert.betti_N.push_back(bN);

        // map1 = (restriction to F, inclusion into N) on H(F+) + H(F-)
        std::vector<std::vector<mpq_class>> cols1;
        auto add_side_columns = [&](ChainSystem& S, const VertexMap& to_f,
                                    const VertexMap& to_n,
                                    const VertexMap& via_f_to_m,
                                    const VertexMap& via_n_to_m) {
            for (const auto& z : homology_rep_cycles(S, k)) {
                std::vector<mpq_class> col;
                auto cf = (bF > 0) ? induced_image_coords(to_f, SF, k, z)
                                   : std::vector<mpq_class>{};
                cf.resize(bF, 0);
                auto cn = (bN > 0) ? induced_image_coords(to_n, SN, k, z)
                                   : std::vector<mpq_class>{};
                cn.resize(bN, 0);
                col.insert(col.end(), cf.begin(), cf.end());
                col.insert(col.end(), cn.begin(), cn.end());
                cols1.push_back(std::move(col));

                // composite through F and through N must agree in H(M)
                auto route_f = induced_image_coords(via_f_to_m, SM, k, z);
                auto route_n = induced_image_coords(via_n_to_m, SM, k, z);
                if (route_f != route_n)
                    cert.composite_zero = false;
            }
        };
        // composed vertex maps side -> M
        auto compose_maps = [&](const VertexMap& a, const VertexMap& b) {
            VertexMap out;
            out.from = a.from;
            out.to = b.to;
            for (int v : a.image)
                out.image.push_back(b.image[v]);
            return out;
        };
        if (bP > 0)
            add_side_columns(SP, p_to_f, p_to_n,
                             compose_maps(p_to_f, f_to_m),
                             compose_maps(p_to_n, n_to_m_map));
        if (bQ > 0)
            add_side_columns(SQ, m_to_f, m_to_n,
                             compose_maps(m_to_f, f_to_m),
                             compose_maps(m_to_n, n_to_m_map));
        cert.rank1.push_back(dense_rank_q(cols1));

        // map2 = j_F - j_N into H(M)
        std::vector<std::vector<mpq_class>> cols2;
        if (bM > 0) {
            for (const auto& z : homology_rep_cycles(SF, k))
                cols2.push_back(induced_image_coords(f_to_m, SM, k, z));
            for (const auto& z : homology_rep_cycles(SN, k)) {
                auto col = induced_image_coords(n_to_m_map, SM, k, z);
                for (auto& v : col)
                    v = -v;
                cols2.push_back(std::move(col));
            }
        }
        cert.rank2.push_back(dense_rank_q(cols2));
    }

    // rank exactness of the long sequence
    auto at = [](const std::vector<int>& v, int k) {
        return (k >= 0 && k < static_cast<int>(v.size())) ? v[k] : 0;
    };
    cert.rank_exact = true;
    for (int k = 0; k <= top + 1; ++k) {
        if (at(cert.rank1, k) + at(cert.rank2, k) != at(cert.dim_mid, k))
            cert.rank_exact = false;
        const int delta = at(cert.dim_M, k) - at(cert.rank2, k);
        const int expected = at(cert.dim_C, k - 1) - at(cert.rank1, k - 1);
        if (delta != expected)
            cert.rank_exact = false;
    }

    // Euler ledger over the full scope
    Realization RMs = M.realize_chambers(scope);
    Realization RNs = N.realize_chambers(scope);
    RealizedSubcomplex Fs = realized_carrier(M.model(), RMs, panels);
    cert.chi_M = RMs.complex.euler_characteristic();
    cert.chi_N = RNs.complex.euler_characteristic();
    cert.chi_F = Fs.complex.euler_characteristic();
    cert.euler_ok = (cert.chi_M == cert.chi_N - cert.chi_F);
    return cert;
}

// ---------------------------------------------------------------------------
// Hierarchy runs.

namespace {

HierarchyTrace run_steps(const ChamberComplex& M0,
                         const std::vector<WallOrbit>& orbits,
                         std::vector<int> scope, const HierarchyOptions& opts,
                         const Limits& limits) {
    HierarchyTrace trace;
    trace.scope = scope;
    trace.caveat = "certificates are scoped to the ball; truncation boundary "
                   "panels are never cut";
    trace.stages.push_back(std::make_shared<ChamberComplex>(M0));

    bool all_pass = true;
    for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
        const ChamberComplex& M = *trace.stages.back();
        std::vector<Panel> panels;
        for (const Panel& p : orbits[oi].panels)
            if (std::binary_search(scope.begin(), scope.end(), p.chamber))
                panels.push_back(p);
        if (panels.empty())
            continue; // elide steps that miss the scope

        HierarchyStep step;
        step.index = static_cast<int>(trace.steps.size());
        step.orbit_label = orbits[oi].label;
        step.reflections = orbits[oi].reflections;
        step.panels_cut = static_cast<int>(panels.size());
        step.components_before =
            static_cast<int>(scoped_components(M, scope).size());

        ChamberComplex N = cut_open(M, panels);
        step.mv = verify_cut_mv(M, N, panels, orbits[oi].reflections, scope,
                                limits);
        step.components_after =
            static_cast<int>(scoped_components(N, scope).size());

        if (opts.recheck_residual) {
            WallFamily residual;
            for (std::size_t oj = oi + 1; oj < orbits.size(); ++oj) {
                WallOrbit rest = orbits[oj];
                std::vector<Panel> keep;
                for (const Panel& p : rest.panels)
                    if (std::binary_search(scope.begin(), scope.end(),
                                           p.chamber))
                        keep.push_back(p);
                rest.panels = std::move(keep);
                if (!rest.panels.empty())
                    residual.orbits.push_back(std::move(rest));
            }
            if (!residual.orbits.empty())
                step.residual_tidy = check_tidy(N, residual, limits).pass();
        }

        all_pass = all_pass && step.mv.pass() && step.residual_tidy;
        trace.steps.push_back(std::move(step));
        trace.stages.push_back(std::make_shared<ChamberComplex>(std::move(N)));
    }

    // terminal census
    const ChamberComplex& last = *trace.stages.back();
    auto comps = scoped_components(last, scope);
    trace.terminal.components = static_cast<int>(comps.size());
    trace.terminal.all_single_chambers = true;
    trace.terminal.all_match_end_model = true;
    const SimplicialComplex& target =
        opts.end_model ? *opts.end_model : M0.model().space;
    for (const auto& comp : comps) {
        if (comp.size() != 1)
            trace.terminal.all_single_chambers = false;
        Realization r = last.realize_chambers(comp);
        if (!isomorphic(r.complex, target))
            trace.terminal.all_match_end_model = false;
    }
    trace.pass = all_pass && trace.terminal.all_match_end_model;
    return trace;
}

} // namespace

HierarchyTrace run_hierarchy(const ChamberComplex& M, const WallFamily& E,
                             const HierarchyOptions& opts,
                             const Limits& limits) {
    TidyCertificate tidy = check_tidy(M, E, limits);
    if (!tidy.pass() && !opts.force) {
        std::string msg = "initial family is not tidy";
        if (!tidy.failures.empty())
            msg += ": " + tidy.failures.front();
        throw TidyViolation(msg);
    }
    std::vector<int> scope(M.n_chambers());
    std::iota(scope.begin(), scope.end(), 0);
    return run_steps(M, E.orbits, std::move(scope), opts, limits);
}

InducedHierarchy induced_hierarchy(const HierarchyTrace& trace, int stage,
                                   int component_index, const FiniteQuotient* Q,
                                   const Limits& limits) {
    if (stage < 0 || stage >= static_cast<int>(trace.stages.size()))
        throw NotAComponent("stage index out of range");
    const ChamberComplex& M = *trace.stages[stage];
    auto comps = scoped_components(M, trace.scope);
    if (component_index < 0 ||
        component_index >= static_cast<int>(comps.size()))
        throw NotAComponent("component index out of range");
    std::vector<int> sub = comps[component_index];
    std::sort(sub.begin(), sub.end());

    // remaining cuts, restricted to the component
    std::vector<WallOrbit> remaining;
    for (std::size_t si = stage; si < trace.steps.size(); ++si) {
        const HierarchyStep& step = trace.steps[si];
        // recover the orbit panels from the stage transition
        const ChamberComplex& before = *trace.stages[si];
        const ChamberComplex& after = *trace.stages[si + 1];
        WallOrbit orbit;
        orbit.label = step.orbit_label;
        orbit.reflections = step.reflections;
        for (const Panel& p : before.active_panels())
            if (!after.panel_active(p))
                orbit.panels.push_back(p);
        remaining.push_back(std::move(orbit));
    }

    InducedHierarchy out;
    HierarchyOptions opts;
    out.trace = run_steps(M, remaining, sub, opts, limits);

    // ball-scoped setwise stabilizer of the component: both g and g^{-1}
    // must keep the chamber set inside itself where representable
    Group& G = M.group();
    std::set<int> in_sub(sub.begin(), sub.end());
    auto preserves = [&](const Element& g) {
        for (int c : sub) {
            Element gc = G.multiply(g, M.chamber(c));
            auto idx = M.chamber_index(gc);
            if (idx && !in_sub.count(*idx))
                return false;
        }
        return true;
    };
    for (const Element& g : M.ball().elements) {
        if (g.is_identity())
            continue;
        if (Q && !Q->kernel_contains(g))
            continue;
        if (preserves(g) && preserves(G.inverse(g)))
            out.stabilizer_elements.push_back(g);
    }
    return out;
}

} // namespace dh
