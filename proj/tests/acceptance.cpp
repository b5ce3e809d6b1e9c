// Acceptance suite: one pass/fail line per criterion, with the stated time
// budgets enforced in-code. Exit code 0 iff every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

#include "dh/euler.hpp"
#include "dh/hierarchy.hpp"
#include "dh/trick.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

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

SimplicialComplex cycle_w(int n) {
    std::vector<std::string> labels;
    std::vector<Simplex> facets;
    for (int i = 0; i < n; ++i) {
        labels.push_back("w" + std::to_string(i));
        facets.push_back({i, (i + 1) % n});
    }
    return SimplicialComplex::from_facets(std::move(labels), std::move(facets));
}

// direct quotient of W x K by cosets; independent of the panel machinery
SimplicialComplex brute_force_quotient(Group& G, const MirroredSpace& model,
                                       const std::vector<Element>& elements) {
    std::map<std::pair<std::string, int>, int> vertex_id;
    std::vector<std::string> labels;
    std::vector<Simplex> facets;
    for (const Element& w : elements) {
        for (const Simplex& f : model.space.facets()) {
            Simplex g;
            for (int x : f) {
                const auto parabolic =
                    G.parabolic_elements(model.S_of[x], 1 << 16);
                Element least = G.multiply(w, parabolic[0]);
                for (const Element& p : parabolic) {
                    Element wp = G.multiply(w, p);
                    if (wp < least)
                        least = wp;
                }
                auto key = std::make_pair(least.raw(), x);
                auto it = vertex_id.find(key);
                if (it == vertex_id.end()) {
                    it = vertex_id.emplace(key,
                                           static_cast<int>(labels.size()))
                             .first;
                    labels.push_back("v" + std::to_string(labels.size()));
                }
                g.push_back(it->second);
            }
            facets.push_back(std::move(g));
        }
    }
    return SimplicialComplex::from_facets(std::move(labels), std::move(facets));
}

int failures = 0;

void criterion(int id, const std::string& label, double limit_seconds,
               const std::function<bool(std::string&)>& body) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    std::string note;
    bool ok = false;
    try {
        ok = body(note);
    } catch (const std::exception& e) {
        ok = false;
        note = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(clock::now() - t0).count();
    if (ok && limit_seconds > 0 && secs > limit_seconds) {
        ok = false;
        note += " [time budget exceeded]";
    }
    if (!ok)
        ++failures;
    std::printf("ACCEPTANCE %2d: %s  %s (%.2fs)%s%s\n", id,
                ok ? "PASS" : "FAIL", label.c_str(), secs,
                note.empty() ? "" : "  -- ", note.c_str());
    std::fflush(stdout);
}

} // namespace

int main() {
    // 1. finite-type classification vs exhaustive Cayley enumeration
    criterion(1, "classification vs brute-force enumeration, rank <= 3", 10.0,
              [](std::string& note) {
                  std::vector<CoxeterSystem> corpus{
                      fixtures::pentagon_racg(),  fixtures::hyperbolic237(),
                      fixtures::square_racg(),    fixtures::dihedral_infinite(),
                      fixtures::dihedral(3),      fixtures::a3(),
                      fixtures::b3(),             fixtures::h3(),
                      fixtures::octahedral_racg(),
                      fixtures::cycle_join_racg(4, 4),
                      fixtures::cycle_join_racg(5, 5)};
                  int checked = 0;
                  for (const CoxeterSystem& W : corpus) {
                      std::vector<GenSet> subsets{{}};
                      for (Gen s = 0; s < W.rank(); ++s) {
                          subsets.push_back({s});
                          for (Gen t = s + 1; t < W.rank(); ++t) {
                              subsets.push_back({s, t});
                              for (Gen u = t + 1; u < W.rank(); ++u)
                                  subsets.push_back({s, t, u});
                          }
                      }
                      for (const GenSet& T : subsets) {
                          // rank <= 3 finite groups top out at 120 elements
                          // and diameter 15; growth past length 16 certifies
                          // non-halting
                          auto e = oracle::enumerate_subgroup(W, T, 100000, 16);
                          if (is_spherical(W, T) != e.finite)
                              return false;
                          if (e.finite &&
                              spherical_order(W, T) !=
                                  static_cast<std::int64_t>(e.count))
                              return false;
                          ++checked;
                      }
                  }
                  note = std::to_string(checked) + " subsets checked";
                  return true;
              });

    // 2. pentagon nerve
    criterion(2, "pentagon nerve is the 5-cycle and triangulates S^1", 0,
              [](std::string&) {
                  Nerve N = build_nerve(fixtures::pentagon_racg());
                  if (!isomorphic(N.complex, fixtures::cycle_complex(5)))
                      return false;
                  ManifoldCertificate c = manifold_check(N, 2);
                  return c.sphere.verdict == SphereVerdict::sphere;
              });

    // 3. separation on the radius-3 pentagon ball
    criterion(3, "separation: all walls cut = one chamber per component", 30.0,
              [](std::string& note) {
                  Setup S = make(fixtures::pentagon_racg(), 3);
                  ChamberComplex cut =
                      S.complex.deactivate(S.complex.active_panels());
                  auto comps = cut.components();
                  if (static_cast<int>(comps.size()) != S.complex.n_chambers())
                      return false;
                  for (const auto& comp : comps) {
                      if (comp.size() != 1)
                          return false;
                      Realization r = cut.realize_chambers(comp);
                      if (!isomorphic(r.complex, S.chamber.model.space))
                          return false;
                  }
                  note = std::to_string(comps.size()) +
                         " components, each the fundamental chamber";
                  return true;
              });

    // 4. trivial intersection: mod-3 passes; the full-group detector fires
    // on crossing translates. Same-type walls in an even system share no
    // vertex, so the crossing configuration needs an odd bond: the detector
    // is exercised on I_2(3), and the pentagon full-group run is pinned to
    // its provable outcome (pass).
    criterion(4, "trivial intersection certificates", 60.0,
              [](std::string& note) {
                  Setup S = make(fixtures::pentagon_racg(), 3);
                  FiniteQuotient Q3 = FiniteQuotient::reflection_mod_p(
                      S.group->system(), 3);
                  TrivialIntersectionCertificate mod3 =
                      trivial_intersection_check(S.complex, Q3);
                  if (!mod3.pass)
                      return false;

                  TrivialIntersectionCertificate pent_full =
                      trivial_intersection_check(
                          S.complex,
                          FiniteQuotient::trivial(S.group->system()));
                  if (!pent_full.pass) // even systems cannot produce a witness
                      return false;

                  Setup H = make(fixtures::dihedral(3), 3);
                  TrivialIntersectionCertificate hex_full =
                      trivial_intersection_check(
                          H.complex,
                          FiniteQuotient::trivial(H.group->system()));
                  if (hex_full.pass || hex_full.violations.empty())
                      return false;
                  const auto& v = hex_full.violations.front();
                  if (v.shared_vertices.empty())
                      return false;
                  note = "witness when Gamma = W on I_2(3): gamma maps a wall "
                         "to a crossing translate";
                  return true;
              });

    // 5. hierarchy execution on the pentagon ball
    criterion(5, "hierarchy: MV rank-exactness and Euler ledger per step", 0,
              [](std::string& note) {
                  Setup S = make(fixtures::pentagon_racg(), 3);
                  FiniteQuotient Q = FiniteQuotient::reflection_mod_p(
                      S.group->system(), 3);
                  HierarchyTrace t = run_hierarchy(
                      S.complex, wall_orbit_family(S.complex, Q));
                  if (!t.terminal.all_single_chambers ||
                      !t.terminal.all_match_end_model)
                      return false;
                  long chi =
                      S.complex.realization().complex.euler_characteristic();
                  for (const auto& step : t.steps) {
                      if (!step.mv.rank_exact || !step.mv.composite_zero)
                          return false;
                      if (!step.mv.euler_ok || step.mv.chi_M != chi)
                          return false;
                      chi = step.mv.chi_N;
                  }
                  note = std::to_string(t.steps.size()) + " cuts, " +
                         std::to_string(t.terminal.components) +
                         " terminal chambers";
                  return true;
              });

    // 6. exact Euler values
    criterion(6, "chi_orb and kappa oracle values", 0, [](std::string&) {
        if (chi_orb(build_nerve(fixtures::hyperbolic237())) !=
            mpq_class(-1, 84))
            return false;
        if (chi_orb(build_nerve(fixtures::pentagon_racg())) !=
            mpq_class(-1, 4))
            return false;
        if (chi_orb(build_nerve(fixtures::square_racg())) != 0)
            return false;
        if (charney_davis(fixtures::cycle_complex(4).join(cycle_w(4))).kappa !=
            0)
            return false;
        if (charney_davis(fixtures::cycle_complex(5).join(cycle_w(5))).kappa !=
            mpq_class(1, 16))
            return false;
        if (charney_davis(fixtures::cycle_complex(5)).kappa !=
            mpq_class(-1, 4))
            return false;
        return true;
    });

    // 7. right-angled identity
    criterion(7, "chi_orb = kappa on right-angled corpus nerves", 0,
              [](std::string&) {
                  for (const CoxeterSystem& W :
                       {fixtures::pentagon_racg(), fixtures::square_racg(),
                        fixtures::octahedral_racg(),
                        fixtures::cycle_join_racg(4, 4),
                        fixtures::cycle_join_racg(5, 5),
                        fixtures::dihedral_infinite()}) {
                      Nerve N = build_nerve(W);
                      if (chi_orb(N) != charney_davis(N.complex).kappa)
                          return false;
                  }
                  return true;
              });

    // 8. sign audit on flag homology 3-spheres
    criterion(8, "kappa >= 0 on corpus flag homology 3-spheres", 0,
              [](std::string& note) {
                  for (int a : {4, 5, 6})
                      for (int b : {4, 5, 6}) {
                          auto j = fixtures::cycle_complex(a).join(cycle_w(b));
                          CharneyDavisReport r = charney_davis(j);
                          if (!r.flag || !r.sphere.all_pass())
                              return false;
                          if (r.kappa < 0) {
                              note = "counterexample candidate at C" +
                                     std::to_string(a) + "*C" +
                                     std::to_string(b);
                              return false;
                          }
                      }
                  return true;
              });

    // 9. reflection trick on the pentagon-boundary disk
    criterion(9, "reflection trick ends in copies of the disk", 60.0,
              [](std::string& note) {
                  MirroredManifold MM = prepare_mirrored_manifold(
                      fixtures::wheel_disk(5), fixtures::cycle_complex(5));
                  TrickOutput T = run_trick(MM, 2);
                  if (!T.wall_certs.pass())
                      return false;
                  if (!T.trace.terminal.all_match_end_model)
                      return false;
                  if (!T.trace.pass || !T.interior_links.pass)
                      return false;
                  note = std::to_string(T.trace.terminal.components) +
                         " terminal copies of the prepared disk";
                  return true;
              });

    // 10. basic construction vs brute-force quotient, |W| <= 48
    criterion(10, "realization equals the W x K quotient on finite groups", 0,
              [](std::string& note) {
                  int done = 0;
                  for (const CoxeterSystem& W :
                       {fixtures::dihedral(2), fixtures::dihedral(3),
                        fixtures::dihedral(4), fixtures::dihedral(6),
                        fixtures::a3(), fixtures::b3()}) {
                      Setup S = make(W, 16);
                      if (!S.complex.ball().exhausted)
                          return false;
                      SimplicialComplex direct = brute_force_quotient(
                          *S.group, S.chamber.model,
                          S.complex.ball().elements);
                      if (!(homology(S.complex.realization().complex, false) ==
                            homology(direct, false)))
                          return false;
                      ++done;
                  }
                  note = std::to_string(done) + " groups, exact profiles";
                  return true;
              });

    if (failures == 0)
        std::printf("ACCEPTANCE: all 10 criteria PASS\n");
    else
        std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
