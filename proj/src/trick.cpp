#include "dh/trick.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dh {

namespace {

std::vector<std::string> facet_labels(const SimplicialComplex& K,
                                      const Simplex& f) {
    std::vector<std::string> out;
    for (int v : f)
        out.push_back(K.label(v));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

MirroredManifold prepare_mirrored_manifold(const SimplicialComplex& M,
                                           const SimplicialComplex& boundary,
                                           const Limits& limits) {
    (void)limits;
    const int d = M.dimension();
    if (d < 1)
        throw Error("manifold must have dimension >= 1");

    // the supplied boundary must be exactly the free faces of M
    std::set<std::vector<std::string>> free_set;
    for (const Simplex& f : M.free_faces())
        free_set.insert(facet_labels(M, f));
    std::set<std::vector<std::string>> given;
    for (const Simplex& f : boundary.facets())
        given.insert(facet_labels(boundary, f));
    if (free_set != given)
        throw NotClosedBoundary(
            "boundary subcomplex must consist of exactly the free faces of M");
    if (boundary.dimension() != d - 1)
        throw NotClosedBoundary("boundary must have dimension dim(M) - 1");

    // closed pseudomanifold: ridges of the boundary in exactly two facets
    if (d - 1 >= 1) {
        std::map<Simplex, int> ridge_count;
        for (const Simplex& f : boundary.facets())
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                Simplex face;
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (i != drop)
                        face.push_back(f[i]);
                ++ridge_count[face];
            }
        for (const auto& [face, c] : ridge_count)
            if (c != 2)
                throw NotClosedBoundary("boundary is not a closed "
                                        "pseudomanifold (ridge in " +
                                        std::to_string(c) + " facets)");
    }

    if (!boundary.is_flag())
        throw NotFlag("boundary triangulation is not flag");

    // Step 1: subdivide the boundary inside M by stellar subdivision at
    // every boundary simplex of dimension >= 1, largest first. Barycenters
    // are labelled with the vertex names joined by '+'.
    std::vector<std::string> labels = M.labels();
    std::map<std::string, int> by_label;
    for (int v = 0; v < M.n_vertices(); ++v)
        by_label[labels[v]] = v;
    std::vector<Simplex> facets = M.facets();

    std::vector<std::vector<std::string>> to_split;
    for (int k = boundary.dimension(); k >= 1; --k)
        for (const Simplex& s : boundary.simplices(k)) {
            std::vector<std::string> names;
            for (int v : s)
                names.push_back(boundary.label(v));
            std::sort(names.begin(), names.end());
            to_split.push_back(std::move(names));
        }

    std::map<std::string, GenSet> barycenter_of; // label -> boundary gen set
    for (const auto& names : to_split) {
        Simplex tau;
        for (const auto& n : names)
            tau.push_back(by_label.at(n));
        std::sort(tau.begin(), tau.end());
        std::string bname;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i)
                bname += '+';
            bname += names[i];
        }
        const int bary = static_cast<int>(labels.size());
        labels.push_back(bname);
        by_label[bname] = bary;
        GenSet gens;
        for (const auto& n : names) {
            auto g = boundary.vertex_by_label(n);
            gens.push_back(*g);
        }
        std::sort(gens.begin(), gens.end());
        barycenter_of[bname] = gens;

        std::vector<Simplex> next;
        for (const Simplex& f : facets) {
            if (!std::includes(f.begin(), f.end(), tau.begin(), tau.end())) {
                next.push_back(f);
                continue;
            }
            for (int v : tau) {
                Simplex g;
                for (int u : f)
                    if (u != v)
                        g.push_back(u);
                g.push_back(bary);
                std::sort(g.begin(), g.end());
                next.push_back(std::move(g));
            }
        }
        facets = std::move(next);
    }

    SimplicialComplex prepared =
        SimplicialComplex::from_facets(labels, std::move(facets));

    auto assemble_S_of = [&boundary](const SimplicialComplex& K,
                                     const std::map<std::string, GenSet>& bary) {
        std::vector<GenSet> S_of(K.n_vertices());
        for (int v = 0; v < K.n_vertices(); ++v) {
            const std::string& name = K.label(v);
            if (auto g = boundary.vertex_by_label(name)) {
                S_of[v] = {*g};
                continue;
            }
            if (auto it = bary.find(name); it != bary.end())
                S_of[v] = it->second;
        }
        return S_of;
    };
    std::vector<GenSet> S_of = assemble_S_of(prepared, barycenter_of);

    // Step 2: the gluing is vertexwise, so a simplex spanned by the vertices
    // of one mirror that is not itself a boundary-star simplex (a chord
    // through the interior) would be glued wrongly. When any such simplex
    // exists, fall back to the full barycentric subdivision, where a simplex
    // with all vertices on the boundary is itself a chain of boundary
    // simplices.
    auto mirrors_sound = [&](const SimplicialComplex& K,
                             const std::vector<GenSet>& S) {
        const int d = K.dimension();
        for (int k = 1; k <= d; ++k)
            for (const Simplex& s : K.simplices(k)) {
                GenSet common = S[s[0]];
                for (std::size_t i = 1; i < s.size() && !common.empty(); ++i) {
                    GenSet next;
                    std::set_intersection(common.begin(), common.end(),
                                          S[s[i]].begin(), S[s[i]].end(),
                                          std::back_inserter(next));
                    common = std::move(next);
                }
                if (common.empty())
                    continue;
                // a glued simplex must consist of boundary barycenters
                // forming a chain (all labels comparable as vertex sets)
                bool all_boundary_chain = true;
                std::vector<GenSet> parts;
                for (int v : s) {
                    const std::string& name = K.label(v);
                    if (auto g = boundary.vertex_by_label(name)) {
                        parts.push_back({*g});
                    } else if (auto it = barycenter_of.find(name);
                               it != barycenter_of.end()) {
                        parts.push_back(it->second);
                    } else {
                        all_boundary_chain = false;
                        break;
                    }
                }
                if (all_boundary_chain) {
                    std::sort(parts.begin(), parts.end(),
                              [](const GenSet& a, const GenSet& b) {
                                  return a.size() < b.size();
                              });
                    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
                        if (!std::includes(parts[i + 1].begin(),
                                           parts[i + 1].end(),
                                           parts[i].begin(), parts[i].end()))
                            all_boundary_chain = false;
                }
                if (!all_boundary_chain)
                    return false;
            }
        return true;
    };

    if (!mirrors_sound(prepared, S_of)) {
        SimplicialComplex full = M.barycentric_subdivision();
        // subdivision vertices are labelled by the parent labels joined with
        // '.' in parent-id order
        std::map<std::string, GenSet> bary2;
        for (int k = 1; k <= boundary.dimension(); ++k)
            for (const Simplex& s : boundary.simplices(k)) {
                Simplex in_m;
                for (int v : s)
                    in_m.push_back(*M.vertex_by_label(boundary.label(v)));
                std::sort(in_m.begin(), in_m.end());
                std::string dotted;
                for (std::size_t i = 0; i < in_m.size(); ++i) {
                    if (i)
                        dotted += '.';
                    dotted += M.label(in_m[i]);
                }
                GenSet gens;
                for (int v : s)
                    gens.push_back(v);
                std::sort(gens.begin(), gens.end());
                bary2[dotted] = gens;
            }
        prepared = std::move(full);
        barycenter_of = std::move(bary2);
        S_of = assemble_S_of(prepared, barycenter_of);
    }

    MirroredSpace space = MirroredSpace::from_S_of(
        std::move(prepared), std::move(S_of), boundary.n_vertices());

    // the right-angled system on the boundary vertices
    const int n = boundary.n_vertices();
    std::vector<std::vector<int>> orders(n, std::vector<int>(n, infinite_order));
    for (int i = 0; i < n; ++i)
        orders[i][i] = 1;
    for (const Simplex& e : boundary.simplices(1)) {
        orders[e[0]][e[1]] = 2;
        orders[e[1]][e[0]] = 2;
    }
    return MirroredManifold{M, boundary, std::move(space),
                            CoxeterSystem(boundary.labels(), std::move(orders))};
}

TrickOutput run_trick(const MirroredManifold& MM, int radius,
                      const FiniteQuotient* Q, const Limits& limits) {
    TrickOutput out;
    out.group = std::make_shared<Group>(MM.system, limits);
    out.complex = std::make_shared<ChamberComplex>(
        basic_construction(out.group, MM.space, radius));
    const ChamberComplex& U = *out.complex;

    out.family = Q ? wall_orbit_family(U, *Q) : wall_type_family(U);
    const auto walls = walls_in_ball(U);

    WallPropertyCertificates& wc = out.wall_certs;
    const Realization& R = U.realization();

    // per-wall carriers
    std::vector<std::set<int>> wall_vertex_sets;
    wc.walls_acyclic = true;
    for (const Wall& w : walls) {
        RealizedSubcomplex c = U.carrier(w.panels);
        wall_vertex_sets.push_back(c.parent_vertices);
        for (const SimplicialComplex& comp : c.complex.components()) {
            HomologyProfile h = homology(comp, true, limits);
            if (!h.acyclic()) {
                wc.walls_acyclic = false;
                wc.failures.push_back("wall has a non-acyclic component: " +
                                      h.to_string());
            }
        }
    }

    // each orbit is a disjoint union of walls
    std::map<Element, int> wall_index;
    for (std::size_t i = 0; i < walls.size(); ++i)
        wall_index[walls[i].reflection] = static_cast<int>(i);
    wc.orbits_disjoint = true;
    for (const WallOrbit& orbit : out.family.orbits) {
        for (std::size_t a = 0; a < orbit.reflections.size(); ++a)
            for (std::size_t b = a + 1; b < orbit.reflections.size(); ++b) {
                const auto& va =
                    wall_vertex_sets[wall_index.at(orbit.reflections[a])];
                const auto& vb =
                    wall_vertex_sets[wall_index.at(orbit.reflections[b])];
                std::vector<int> shared;
                std::set_intersection(va.begin(), va.end(), vb.begin(),
                                      vb.end(), std::back_inserter(shared));
                if (!shared.empty()) {
                    wc.orbits_disjoint = false;
                    wc.failures.push_back(
                        "orbit " + orbit.label +
                        " contains two walls sharing a vertex");
                }
            }
    }

    // intersections of distinct orbit carriers are acyclic componentwise
    wc.intersections_acyclic = true;
    {
        WallFamily fam = out.family;
        TidyCertificate tidy = check_tidy(U, fam, limits);
        wc.intersections_acyclic = tidy.intersections_acyclic;
        wc.local_right_angled = tidy.local_arrangement;
        if (!tidy.intersections_acyclic || !tidy.local_arrangement)
            wc.failures.insert(wc.failures.end(), tidy.failures.begin(),
                               tidy.failures.end());
    }

    // panel types per wall (cocompactness proxy: finitely many types)
    wc.finite_panel_types = true;
    for (const Wall& w : walls)
        if (w.panel_types.empty())
            wc.finite_panel_types = false;

    // local right-angled arrangement: walls through an interior vertex
    // commute pairwise
    {
        Group& G = U.group();
        std::set<int> boundary_vertices;
        for (const Simplex& f : R.complex.free_faces())
            boundary_vertices.insert(f.begin(), f.end());
        std::map<int, std::vector<int>> through;
        for (std::size_t i = 0; i < walls.size(); ++i)
            for (int v : wall_vertex_sets[i])
                through[v].push_back(static_cast<int>(i));
        for (const auto& [v, list] : through) {
            if (boundary_vertices.count(v))
                continue;
            for (std::size_t a = 0; a < list.size(); ++a)
                for (std::size_t b = a + 1; b < list.size(); ++b) {
                    Element prod = G.multiply(
                        G.multiply(walls[list[a]].reflection,
                                   walls[list[b]].reflection),
                        G.multiply(walls[list[a]].reflection,
                                   walls[list[b]].reflection));
                    if (!prod.is_identity()) {
                        wc.local_right_angled = false;
                        wc.failures.push_back(
                            "walls through " + R.complex.label(v) +
                            " do not commute");
                    }
                }
        }
    }

    // hierarchy ending in copies of the chamber model
    HierarchyOptions opts;
    opts.end_model = &MM.space.space;
    out.trace = run_hierarchy(U, out.family, opts, limits);

    // boundarylessness shadow: interior vertex links are homology spheres
    {
        std::set<int> boundary_vertices;
        for (const Simplex& f : R.complex.free_faces())
            boundary_vertices.insert(f.begin(), f.end());
        const int d = R.complex.dimension();
        out.interior_links.pass = true;
        for (int v = 0; v < R.complex.n_vertices(); ++v) {
            if (boundary_vertices.count(v))
                continue;
            ++out.interior_links.checked;
            SimplicialComplex lk = R.complex.link(Simplex{v});
            SphereCertificate cert = is_homology_sphere(lk, d - 1, limits);
            if (!cert.all_pass()) {
                out.interior_links.pass = false;
                out.interior_links.failures.push_back(
                    "link of " + R.complex.label(v) + " is not a homology S^" +
                    std::to_string(d - 1));
            }
        }
    }

    out.pass = wc.pass() && out.trace.pass && out.interior_links.pass;
    return out;
}

} // namespace dh
