#include "rml/json_io.hpp"

#include "rml/errors.hpp"

namespace rml {

json elt_to_json(const Elt& a) {
    const auto& t = *a.tower();
    const auto& F = *t.base_field();
    json out = json::array();
    for (uint32_t c : a.coords()) {
        for (uint32_t r : F.residues(c)) out.push_back(r);
    }
    return out;
}

Elt elt_from_json(const TowerPtr& t, const json& j) {
    const auto& F = *t->base_field();
    if (!j.is_array() || j.size() != size_t{t->m()} * F.e())
        throw InvalidArgError("elt_from_json: residue array has wrong length");
    std::vector<uint32_t> coords(t->m());
    size_t pos = 0;
    for (uint32_t i = 0; i < t->m(); ++i) {
        std::vector<uint32_t> residues(F.e());
        for (uint32_t r = 0; r < F.e(); ++r) residues[r] = j.at(pos++).get<uint32_t>();
        coords[i] = F.from_residues(residues);
    }
    return t->element(std::move(coords));
}

json tower_to_json(const FieldTower& t) {
    return json{{"p", t.p()},
                {"e", t.e()},
                {"m", t.m()},
                {"base_modulus", t.base_field()->modulus()},
                {"ext_modulus", t.ext_modulus()}};
}

TowerPtr tower_from_json(const json& j) {
    return FieldTower::create_with_moduli(j.at("p").get<uint32_t>(), j.at("e").get<uint32_t>(),
                                          j.at("m").get<uint32_t>(),
                                          j.at("base_modulus").get<FqPoly>(),
                                          j.at("ext_modulus").get<FqPoly>());
}

json field_to_json(const FqField& f) {
    return json{{"p", f.p()}, {"e", f.e()}, {"base_modulus", f.modulus()}};
}

FqFieldPtr field_from_json(const json& j) {
    return FqField::make(j.at("p").get<uint32_t>(), j.at("e").get<uint32_t>(),
                         j.at("base_modulus").get<FqPoly>());
}

json subspace_to_json(const FqSubspace& v) {
    json basis = json::array();
    for (uint32_t i = 0; i < v.dim(); ++i) basis.push_back(v.basis().row(i));
    return json{{"ambient_dim", v.ambient_dim()}, {"q_desc", field_to_json(*v.field())},
                {"basis", basis}};
}

FqSubspace subspace_from_json(const json& j) {
    FqFieldPtr F = field_from_json(j.at("q_desc"));
    const uint32_t n = j.at("ambient_dim").get<uint32_t>();
    std::vector<FqVec> rows;
    for (const auto& r : j.at("basis")) rows.push_back(r.get<FqVec>());
    FqMatrix basis = FqMatrix::from_rows(F, n, rows);
    return FqSubspace::from_rref_exact(std::move(basis), n);
}

json qlinpoly_to_json(const QLinPoly& f) {
    json coeffs = json::array();
    for (const Elt& c : f.coeffs()) coeffs.push_back(elt_to_json(c));
    return json{{"q_desc", tower_to_json(*f.tower())}, {"coeffs", coeffs}};
}

QLinPoly qlinpoly_from_json(const json& j) {
    TowerPtr t = tower_from_json(j.at("q_desc"));
    std::vector<Elt> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(elt_from_json(t, c));
    return QLinPoly::from_coeffs(t, std::move(coeffs));
}

json gabidulin_to_json(const GabidulinCode& c) {
    json alphas = json::array();
    for (const Elt& a : c.alphas()) alphas.push_back(elt_to_json(a));
    return json{{"tower", tower_to_json(*c.tower())}, {"n", c.n()}, {"k", c.k()},
                {"alphas", alphas}};
}

GabidulinCode gabidulin_from_json(const json& j) {
    TowerPtr t = tower_from_json(j.at("tower"));
    std::vector<Elt> alphas;
    for (const auto& a : j.at("alphas")) alphas.push_back(elt_from_json(t, a));
    if (j.at("n").get<size_t>() != alphas.size())
        throw InvalidArgError("gabidulin_from_json: n does not match alphas");
    return GabidulinCode(t, j.at("k").get<uint32_t>(), std::move(alphas));
}

json linear_code_to_json(const LinearCode& c) {
    json rows = json::array();
    for (uint32_t i = 0; i < c.k(); ++i) {
        json row = json::array();
        for (uint32_t j = 0; j < c.n(); ++j) row.push_back(elt_to_json(c.generator().at(i, j)));
        rows.push_back(row);
    }
    return json{{"tower", tower_to_json(*c.tower())}, {"n", c.n()}, {"k", c.k()},
                {"generator", rows}};
}

LinearCode linear_code_from_json(const json& j) {
    TowerPtr t = tower_from_json(j.at("tower"));
    const auto& rows = j.at("generator");
    std::vector<std::vector<Elt>> g;
    for (const auto& row : rows) {
        std::vector<Elt> r;
        for (const auto& entry : row) r.push_back(elt_from_json(t, entry));
        g.push_back(std::move(r));
    }
    return LinearCode(t, ExtMatrix::from_rows(t, j.at("n").get<uint32_t>(), g));
}

json pattern_to_json(const KernelPattern& p) {
    json entries = json::array();
    for (const auto& e : p.entries()) {
        entries.push_back(json{{"subspace", subspace_to_json(e.subspace)},
                               {"delta", e.multiplicity}});
    }
    return json{{"k", p.k()}, {"entries", entries}};
}

KernelPattern pattern_from_json(const json& j) {
    std::vector<PatternEntry> entries;
    for (const auto& e : j.at("entries")) {
        entries.push_back(PatternEntry{subspace_from_json(e.at("subspace")),
                                       e.at("delta").get<uint32_t>()});
    }
    return KernelPattern(j.at("k").get<uint32_t>(), std::move(entries));
}

json certificate_to_json(const AttainmentCertificate& cert) {
    json rows = json::array();
    for (uint32_t i = 0; i < cert.m.rows(); ++i) {
        json row = json::array();
        for (uint32_t j = 0; j < cert.m.cols(); ++j) row.push_back(elt_to_json(cert.m.at(i, j)));
        rows.push_back(row);
    }
    return json{{"pattern", pattern_to_json(cert.pattern)},
                {"M", rows},
                {"verified", json{{"det_nonzero", true}, {"rows_annihilate", true}}}};
}

json verdict_to_json(const CheckerVerdict& v) {
    json out{{"property", v.property},
             {"holds", v.holds},
             {"tuples_checked", v.tuples_checked},
             {"mode", v.mode}};
    if (!v.note.empty()) out["note"] = v.note;
    if (!v.holds) {
        json witness;
        if (!v.witness_tuple.empty()) {
            json tuple = json::array();
            for (const auto& s : v.witness_tuple) tuple.push_back(subspace_to_json(s));
            witness["tuple"] = tuple;
        }
        if (v.witness_actual_dim) witness["actual_dim"] = *v.witness_actual_dim;
        if (v.witness_generic_dim) witness["generic_dim"] = *v.witness_generic_dim;
        if (v.witness_center) {
            json center = json::array();
            for (const auto& x : *v.witness_center) center.push_back(elt_to_json(x));
            witness["center"] = center;
        }
        if (!v.witness_codewords.empty()) {
            json words = json::array();
            for (const auto& w : v.witness_codewords) {
                json word = json::array();
                for (const auto& x : w) word.push_back(elt_to_json(x));
                words.push_back(word);
            }
            witness["codewords"] = words;
        }
        if (v.witness_pattern) witness["pattern"] = pattern_to_json(*v.witness_pattern);
        out["witness"] = witness;
    }
    return out;
}

}  // namespace rml
