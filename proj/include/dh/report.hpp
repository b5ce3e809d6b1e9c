// JSON report assembly. All sets are emitted in canonical order and exact
// rationals as {num, den} integer pairs, so reports are byte-deterministic
// for fixed inputs.

#ifndef DH_REPORT_HPP
#define DH_REPORT_HPP

#include <json.hpp>

#include "dh/euler.hpp"
#include "dh/hierarchy.hpp"
#include "dh/trick.hpp"

namespace dh::report {

using json = nlohmann::json;

json rational(const mpq_class& q);
std::string element_tag(const CoxeterSystem& W, const Element& e);

json profile(const HomologyProfile& p);
json sphere_cert(const SphereCertificate& c);
json disk_cert(const DiskCertificate& c);
json manifold_cert(const ManifoldCertificate& c);
json ball_report(const CoxeterSystem& W, const CayleyBall& b);
json nerve_report(const CoxeterSystem& W, const Nerve& N);
json complex_summary(const SimplicialComplex& K);
json walls_report(const ChamberComplex& U, const std::vector<Wall>& walls);
json torsion_cert(const CoxeterSystem& W, const TorsionCertificate& c);
json trivial_intersection_cert(const CoxeterSystem& W,
                               const TrivialIntersectionCertificate& c);
json link_cert(const LinkCertificate& c);
json tidy_cert(const TidyCertificate& c);
json mv_cert(const MayerVietorisCertificate& c);
json trace_report(const CoxeterSystem& W, const HierarchyTrace& t);
json euler_json(const EulerReport& r);
json charney_davis_json(const CharneyDavisReport& r);
json trick_report(const TrickOutput& t);

/// Wrap a payload with the command echo and input digests.
json envelope(const std::vector<std::string>& argv,
              const std::vector<std::pair<std::string, std::string>>& digests,
              json payload, bool pass);

} // namespace dh::report

#endif
