#include "dh/report.hpp"

namespace dh::report {

json rational(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    if (!c.get_num().fits_slong_p() || !c.get_den().fits_slong_p())
        throw ResourceLimit("rational exceeds 64-bit serialization range");
    return json{{"num", c.get_num().get_si()}, {"den", c.get_den().get_si()}};
}

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

json profile(const HomologyProfile& p) {
    json degrees = json::array();
    for (std::size_t k = 0; k < p.betti.size(); ++k) {
        json torsion = json::array();
        if (k < p.torsion.size())
            for (const auto& t : p.torsion[k])
                torsion.push_back(t.get_str());
        degrees.push_back(
            {{"degree", k}, {"rank", p.betti[k]}, {"torsion", torsion}});
    }
    return json{{"reduced", p.reduced}, {"groups", degrees}};
}

json sphere_cert(const SphereCertificate& c) {
    const char* verdict = "fail";
    switch (c.verdict) {
    case SphereVerdict::sphere:
        verdict = "sphere";
        break;
    case SphereVerdict::homology_sphere:
        verdict = "homology sphere; sphere status unresolved";
        break;
    case SphereVerdict::pass_high_dim:
        verdict = "homology sphere (high dimension)";
        break;
    case SphereVerdict::fail:
        verdict = "fail";
        break;
    }
    return json{{"dim", c.dim},
                {"pseudomanifold", c.pseudomanifold},
                {"homology_matches", c.homology_matches},
                {"links_pass", c.links_pass},
                {"verdict", verdict},
                {"failures", c.failures}};
}

json disk_cert(const DiskCertificate& c) {
    return json{{"dim", c.dim},
                {"pseudomanifold_with_boundary", c.pseudomanifold_with_boundary},
                {"acyclic", c.acyclic},
                {"boundary_sphere", sphere_cert(c.boundary_sphere)},
                {"pass", c.pass},
                {"failures", c.failures}};
}

json manifold_cert(const ManifoldCertificate& c) {
    return json{{"n", c.dim},
                {"sphere_check", sphere_cert(c.sphere)},
                {"disk_check", disk_cert(c.disk)}};
}

json ball_report(const CoxeterSystem& W, const CayleyBall& b) {
    json elements = json::array();
    for (const Element& e : b.elements)
        elements.push_back(element_tag(W, e));
    json edges = json::array();
    for (const auto& e : b.edges)
        edges.push_back({{"from", element_tag(W, b.elements[e.from])},
                         {"gen", W.name_of(e.gen)},
                         {"to", element_tag(W, b.elements[e.to])}});
    return json{{"radius", b.radius},
                {"count", b.elements.size()},
                {"exhausted", b.exhausted},
                {"elements", elements},
                {"edges", edges},
                {"length_histogram", b.length_histogram}};
}

json complex_summary(const SimplicialComplex& K) {
    return json{{"vertices", K.n_vertices()},
                {"dimension", K.dimension()},
                {"f_vector", K.f_vector()},
                {"euler_characteristic", K.euler_characteristic()},
                {"facets", K.facets().size()}};
}

json nerve_report(const CoxeterSystem& W, const Nerve& N) {
    json spherical = json::array();
    for (const auto& s : N.spherical) {
        json names = json::array();
        for (Gen g : s.subset)
            names.push_back(W.name_of(g));
        spherical.push_back({{"subset", names}, {"order", s.order}});
    }
    return json{{"generators", W.generator_names()},
                {"right_angled", W.is_right_angled()},
                {"even", W.is_even()},
                {"spherical_subsets", spherical},
                {"flag", N.complex.is_flag()},
                {"complex", complex_summary(N.complex)}};
}

json walls_report(const ChamberComplex& U, const std::vector<Wall>& walls) {
    const CoxeterSystem& W = U.system();
    json out = json::array();
    for (const Wall& w : walls) {
        json panels = json::array();
        for (const Panel& p : w.panels)
            panels.push_back({{"chamber", element_tag(W, U.chamber(p.chamber))},
                              {"gen", W.name_of(p.gen)}});
        json types = json::array();
        for (Gen g : w.panel_types)
            types.push_back(W.name_of(g));
        out.push_back({{"reflection", element_tag(W, w.reflection)},
                       {"panels", panels},
                       {"types", types}});
    }
    return out;
}

json torsion_cert(const CoxeterSystem& W, const TorsionCertificate& c) {
    json items = json::array();
    for (const auto& item : c.items) {
        json names = json::array();
        for (Gen g : item.subset)
            names.push_back(W.name_of(g));
        json j{{"subset", names}, {"injective", item.injective}};
        if (!item.injective)
            j["witness"] = element_tag(W, item.witness);
        items.push_back(std::move(j));
    }
    return json{{"pass", c.pass}, {"maximal_spherical", items}};
}

json trivial_intersection_cert(const CoxeterSystem& W,
                               const TrivialIntersectionCertificate& c) {
    json violations = json::array();
    for (const auto& v : c.violations)
        violations.push_back({{"gamma", element_tag(W, v.gamma)},
                              {"wall", element_tag(W, v.reflection)},
                              {"translate", element_tag(W, v.translated_reflection)},
                              {"shared_vertices", v.shared_vertices}});
    return json{{"pass", c.pass},
                {"violations", violations},
                {"wall_orbits", c.wall_orbits},
                {"gamma_ball_count", c.gamma_ball_count},
                {"scope", c.scope_caveat}};
}

json link_cert(const LinkCertificate& c) {
    json failures = json::array();
    for (const auto& [chamber, what] : c.failures)
        failures.push_back({{"chamber", chamber}, {"reason", what}});
    return json{{"pass", c.pass},
                {"interior_chambers", c.interior_chambers},
                {"excluded_chambers", c.excluded_chambers},
                {"failures", failures},
                {"scope", c.scope_caveat}};
}

json tidy_cert(const TidyCertificate& c) {
    return json{{"components_acyclic", c.components_acyclic},
                {"intersections_acyclic", c.intersections_acyclic},
                {"boundary_condition", c.boundary_condition},
                {"local_arrangement", c.local_arrangement},
                {"pass", c.pass()},
                {"failures", c.failures},
                {"caveat", c.caveat}};
}

json mv_cert(const MayerVietorisCertificate& c) {
    return json{{"dim_collar_boundary", c.dim_C},
                {"dim_middle", c.dim_mid},
                {"dim_M", c.dim_M},
                {"rank_map1", c.rank1},
                {"rank_map2", c.rank2},
                {"betti_F", c.betti_F},
                {"betti_N", c.betti_N},
                {"composite_zero", c.composite_zero},
                {"rank_exact", c.rank_exact},
                {"chi_M", c.chi_M},
                {"chi_N", c.chi_N},
                {"chi_F", c.chi_F},
                {"euler_identity", c.euler_ok},
                {"affected_chambers", c.affected_chambers},
                {"pass", c.pass()}};
}

json trace_report(const CoxeterSystem& W, const HierarchyTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps) {
        json refl = json::array();
        for (const Element& r : s.reflections)
            refl.push_back(element_tag(W, r));
        steps.push_back({{"index", s.index},
                         {"orbit", s.orbit_label},
                         {"reflections", refl},
                         {"panels_cut", s.panels_cut},
                         {"components_before", s.components_before},
                         {"components_after", s.components_after},
                         {"mayer_vietoris", mv_cert(s.mv)},
                         {"residual_tidy", s.residual_tidy}});
    }
    return json{{"steps", steps},
                {"terminal",
                 {{"components", t.terminal.components},
                  {"all_single_chambers", t.terminal.all_single_chambers},
                  {"all_match_end_model", t.terminal.all_match_end_model}}},
                {"pass", t.pass},
                {"caveat", t.caveat}};
}

json euler_json(const EulerReport& r) {
    json out{{"chi_orb", rational(r.chi_orb)},
             {"kappa", rational(r.kappa)},
             {"right_angled", r.right_angled},
             {"dimension", r.dimension},
             {"even_dimension", r.even_dimension}};
    if (r.even_dimension)
        out["sign_verdict"] = r.sign_verdict;
    return out;
}

json charney_davis_json(const CharneyDavisReport& r) {
    return json{{"kappa", rational(r.kappa)},
                {"convention",
                 "kappa = sum over simplices, including the empty one, of "
                 "(-1/2)^(number of vertices); the empty simplex contributes "
                 "1, so kappa agrees with chi_orb on right-angled systems"},
                {"flag", r.flag},
                {"dim", r.dim},
                {"sphere_check", sphere_cert(r.sphere)},
                {"sign", r.sign},
                {"hypotheses_hold", r.hypotheses_hold}};
}

json trick_report(const TrickOutput& t) {
    const CoxeterSystem& W = t.group->system();
    json wc{{"walls_acyclic", t.wall_certs.walls_acyclic},
            {"orbits_disjoint", t.wall_certs.orbits_disjoint},
            {"intersections_acyclic", t.wall_certs.intersections_acyclic},
            {"finite_panel_types", t.wall_certs.finite_panel_types},
            {"local_right_angled", t.wall_certs.local_right_angled},
            {"failures", t.wall_certs.failures},
            {"pass", t.wall_certs.pass()}};
    json orbits = json::array();
    for (const auto& o : t.family.orbits) {
        json refl = json::array();
        for (const Element& r : o.reflections)
            refl.push_back(element_tag(W, r));
        orbits.push_back({{"label", o.label},
                          {"walls", refl},
                          {"panels", o.panels.size()}});
    }
    return json{{"system", {{"generators", W.generator_names()},
                            {"right_angled", W.is_right_angled()}}},
                {"chambers", t.complex->n_chambers()},
                {"wall_properties", wc},
                {"orbits", orbits},
                {"hierarchy", trace_report(W, t.trace)},
                {"interior_links",
                 {{"pass", t.interior_links.pass},
                  {"checked", t.interior_links.checked},
                  {"failures", t.interior_links.failures}}},
                {"pass", t.pass}};
}

json envelope(const std::vector<std::string>& argv,
              const std::vector<std::pair<std::string, std::string>>& digests,
              json payload, bool pass) {
    json dig = json::object();
    for (const auto& [name, hash] : digests)
        dig[name] = hash;
    return json{{"command", argv},
                {"inputs", dig},
                {"report", std::move(payload)},
                {"pass", pass}};
}

} // namespace dh::report
