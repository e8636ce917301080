#pragma once

#include <string>

#include "json.hpp"
#include "rml/ffield.hpp"
#include "rml/fqspace.hpp"
#include "rml/gabidulin.hpp"
#include "rml/highermrd.hpp"
#include "rml/patterns.hpp"
#include "rml/qlinpoly.hpp"

namespace rml {

using json = nlohmann::json;

// Element wire format: flat little-endian F_p residue array of length e*m.
json elt_to_json(const Elt& a);
Elt elt_from_json(const TowerPtr& t, const json& j);

// Tower: {p, e, m, base_modulus (F_p residues), ext_modulus (F_q indices)}.
json tower_to_json(const FieldTower& t);
TowerPtr tower_from_json(const json& j);

// Field descriptor for F_q payloads: {p, e, base_modulus}.
json field_to_json(const FqField& f);
FqFieldPtr field_from_json(const json& j);

// Subspace: {ambient_dim, q_desc, basis}; basis must arrive in RREF, the
// loader re-canonicalizes and rejects otherwise.
json subspace_to_json(const FqSubspace& v);
FqSubspace subspace_from_json(const json& j);

json qlinpoly_to_json(const QLinPoly& f);
QLinPoly qlinpoly_from_json(const json& j);

json gabidulin_to_json(const GabidulinCode& c);
GabidulinCode gabidulin_from_json(const json& j);
json linear_code_to_json(const LinearCode& c);
LinearCode linear_code_from_json(const json& j);

json pattern_to_json(const KernelPattern& p);
KernelPattern pattern_from_json(const json& j);

json certificate_to_json(const AttainmentCertificate& cert);

json verdict_to_json(const CheckerVerdict& v);

}  // namespace rml
