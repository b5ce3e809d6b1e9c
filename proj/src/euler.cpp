#include "dh/euler.hpp"

namespace dh {

mpq_class chi_orb(const Nerve& N) {
    mpq_class total = 1; // empty subset: W_empty is trivial
    for (const auto& s : N.spherical) {
        mpq_class term(1, s.order);
        if (s.subset.size() % 2 == 1)
            term = -term;
        total += term;
    }
    total.canonicalize();
    return total;
}

CharneyDavisReport charney_davis(const SimplicialComplex& L,
                                 const Limits& limits) {
    CharneyDavisReport rep;
    rep.dim = L.dimension();
    mpq_class total = 1; // empty simplex
    for (int d = 0; d <= rep.dim; ++d) {
        const std::size_t count = L.simplices(d).size();
        mpq_class term(static_cast<long>(count), 1L << (d + 1));
        if ((d + 1) % 2 == 1)
            term = -term;
        total += term;
    }
    total.canonicalize();
    rep.kappa = total;
    rep.flag = L.is_flag();
    rep.sphere = is_homology_sphere(L, rep.dim, limits);
    rep.hypotheses_hold = rep.flag && rep.sphere.all_pass();
    rep.sign = sgn(rep.kappa);
    return rep;
}

long euler_of_complex(const SimplicialComplex& K) {
    return K.euler_characteristic();
}

EulerReport euler_report(const CoxeterSystem& W, const Nerve& N) {
    EulerReport rep;
    rep.chi_orb = chi_orb(N);
    CharneyDavisReport cd = charney_davis(N.complex);
    rep.kappa = cd.kappa;
    rep.right_angled = W.is_right_angled();
    rep.dimension = N.complex.dimension() + 1;
    rep.even_dimension = (rep.dimension % 2 == 0);
    if (rep.even_dimension) {
        mpq_class signed_chi = rep.chi_orb;
        if ((rep.dimension / 2) % 2 == 1)
            signed_chi = -signed_chi;
        rep.sign_verdict = sgn(signed_chi);
    }
    return rep;
}

} // namespace dh
