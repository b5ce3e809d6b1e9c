// Orbifold Euler characteristics, Charney-Davis quantities, and the sign
// predictions for even-dimensional Euler characteristics. Exact rationals
// throughout; no floating point.

#ifndef DH_EULER_HPP
#define DH_EULER_HPP

#include <gmpxx.h>

#include "dh/nerve.hpp"
#include "dh/simplicial.hpp"

namespace dh {

/// chi_orb = sum over spherical T (including the empty set) of
/// (-1)^|T| / |W_T|.
mpq_class chi_orb(const Nerve& N);

struct CharneyDavisReport {
    mpq_class kappa; // sum over simplices and the empty set of (-1/2)^|T|
    bool flag = false;
    SphereCertificate sphere; // homology-sphere certificate at dim(L)
    int dim = -1;
    // sign prediction for flag homology (2n-1)-spheres: kappa >= 0 when the
    // hypotheses hold; sign recorded as -1, 0, 1
    int sign = 0;
    bool hypotheses_hold = false; // flag and homology-sphere checks both pass
};

/// kappa(L) with the convention that the empty simplex contributes 1, a
/// vertex -1/2, an edge 1/4, matching chi_orb on right-angled systems.
CharneyDavisReport charney_davis(const SimplicialComplex& L,
                                 const Limits& limits = Limits{});

long euler_of_complex(const SimplicialComplex& K);

struct EulerReport {
    mpq_class chi_orb;
    mpq_class kappa; // of the nerve complex
    bool right_angled = false;
    int dimension = 0; // dim(nerve) + 1, the dimension of the Davis complex
    // (-1)^{n/2} chi_orb when n is even; 0 when odd/unknown
    int sign_verdict = 0;
    bool even_dimension = false;
};

EulerReport euler_report(const CoxeterSystem& W, const Nerve& N);

} // namespace dh

#endif
