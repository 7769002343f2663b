#pragma once

// JSON renderings of the library's value types. Scalars are serialized as
// canonical "num/den" strings so reports are byte-stable across runs and
// platforms; maps keep canonical point order.

#include "feq/extension.hpp"
#include "feq/functional.hpp"
#include "feq/interpolation.hpp"
#include "feq/quadratic.hpp"
#include "feq/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace feq {

using Json = nlohmann::json;

inline Json to_json(const Rational& x) { return x.str(); }

inline Json to_json(const Quadratic& x) {
    return Json{{"a", x.rational_part().str()},
                {"b", x.surd_part().str()},
                {"d", x.radicand()}};
}

inline Json to_json(const std::vector<Rational>& xs) {
    Json arr = Json::array();
    for (const auto& x : xs) arr.push_back(x.str());
    return arr;
}

template <class Scalar>
Json to_json(const FormalFunctional<Scalar>& fn) {
    Json arr = Json::array();
    for (const auto& [pt, c] : fn.terms())
        arr.push_back(Json{{"point", to_json(pt)}, {"coefficient", c.str()}});
    return arr;
}

inline Json to_json(const Instance& inst) {
    return Json{{"coefficient", inst.coefficient.str()},
                {"kind", inst.kind == InstanceKind::mixed ? "mixed" : "equal-step"},
                {"x", inst.base.str()},
                {"steps", to_json(inst.steps)},
                {"order", inst.order}};
}

inline Json to_json(const ExtensionCertificate& cert) {
    Json instances = Json::array();
    for (const auto& inst : cert.instances) instances.push_back(to_json(inst));
    return Json{{"target", to_json(cert.target)},
                {"instances", instances},
                {"provenance", cert.provenance}};
}

inline Json to_json(const InterpolationReport& rep) {
    return Json{{"ok", rep.ok},
                {"nodes", to_json(rep.nodes)},
                {"coefficients", to_json(rep.coefficients)},
                {"checked_bases", to_json(rep.checked_bases)},
                {"violations", to_json(rep.violations)},
                {"discrepancies", to_json(rep.discrepancies)},
                {"note", rep.note}};
}

inline Json to_json(const RefinementReport& rep) {
    return Json{{"ok", rep.ok},
                {"coarse_coefficients", to_json(rep.coarse_coefficients)},
                {"fine_coefficients", to_json(rep.fine_coefficients)},
                {"violations", to_json(rep.violations)},
                {"note", rep.note}};
}

inline Json to_json(const LocalReconstructReport& rep) {
    Json residuals = Json::array();
    for (const auto& [pt, r] : rep.residuals)
        residuals.push_back(Json{{"point", pt.str()}, {"residual", r.str()}});
    return Json{{"locally_polynomial", rep.locally_polynomial},
                {"nodes", to_json(rep.nodes)},
                {"coefficients", to_json(rep.coefficients)},
                {"vanishing_violations", to_json(rep.vanishing_violations)},
                {"residuals", residuals},
                {"note", rep.note}};
}

} // namespace feq
