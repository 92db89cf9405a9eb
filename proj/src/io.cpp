#include "qav/io.hpp"

#include <fstream>
#include <sstream>

namespace qav {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

Rat rat_from_json(const Json& j, const std::string& path) {
    try {
        if (j.is_string()) return parse_rat(j.get<std::string>());
        if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<long long>())));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    } catch (const std::domain_error& e) {
        fail(path, e.what());
    }
    fail(path, "expected a rational as \"p/q\" string or integer");
}

Int int_from_json(const Json& j, const std::string& path) {
    Rat r = rat_from_json(j, path);
    if (r.get_den() != 1) fail(path, "expected an integer");
    return r.get_num();
}

FieldElement element_from_json(const FieldPtr& field, const Json& j, const std::string& path) {
    if (j.is_array()) {
        if (j.size() == 0 || static_cast<int>(j.size()) > field->degree())
            fail(path, "coefficient array length must be 1.." +
                           std::to_string(field->degree()));
        std::vector<Rat> c(field->degree(), Rat(0));
        for (size_t i = 0; i < j.size(); ++i)
            c[i] = rat_from_json(j[i], path + "[" + std::to_string(i) + "]");
        return FieldElement(field, std::move(c));
    }
    return FieldElement::from_rational(field, rat_from_json(j, path));
}

FieldPtr field_from_json(const Json& j) {
    if (!j.contains("field")) return NumberField::rationals();
    const Json& f = j.at("field");
    if (!f.is_object() || !f.contains("generator") || !f.contains("min_poly"))
        fail("field", "expected {\"generator\", \"min_poly\"}");
    if (!f.at("generator").is_string()) fail("field.generator", "expected a string");
    if (!f.at("min_poly").is_array() || f.at("min_poly").size() < 2)
        fail("field.min_poly", "expected the coefficient array c0..ck, low to high");
    std::vector<Int> poly;
    for (size_t i = 0; i < f.at("min_poly").size(); ++i)
        poly.push_back(int_from_json(f.at("min_poly")[i],
                                     "field.min_poly[" + std::to_string(i) + "]"));
    try {
        return std::make_shared<const NumberField>(f.at("generator").get<std::string>(),
                                                   std::move(poly));
    } catch (const std::invalid_argument& e) {
        fail("field.min_poly", e.what());
    }
}

SingType sing_type_from_json(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a singularity type string");
    const std::string s = j.get<std::string>();
    if (s == "ordinary") return SingType::Ordinary;
    if (s == "cusp") return SingType::Cusp;
    if (s == "tacnode") return SingType::Tacnode;
    if (s == "custom") return SingType::Custom;
    fail(path, "unknown local type \"" + s + "\"");
}

LocalFaceDescriptor local_face_from_json(const FieldPtr&, const Json& j, const std::string& path,
                                         size_t branches) {
    LocalFaceDescriptor f;
    if (!j.is_object() || !j.contains("equations") || !j.contains("rhs") ||
        !j.contains("exponent"))
        fail(path, "expected {\"equations\", \"rhs\", \"exponent\"}");
    const Json& eq = j.at("equations");
    const Json& rhs = j.at("rhs");
    if (!eq.is_array() || !rhs.is_array() || eq.size() != rhs.size() || eq.empty())
        fail(path, "equations and rhs must be nonempty arrays of equal length");
    for (size_t i = 0; i < eq.size(); ++i) {
        const std::string rp = path + ".equations[" + std::to_string(i) + "]";
        if (!eq[i].is_array() || eq[i].size() != branches)
            fail(rp, "expected one coefficient per branch");
        std::vector<Rat> row;
        for (size_t k = 0; k < eq[i].size(); ++k)
            row.push_back(rat_from_json(eq[i][k], rp + "[" + std::to_string(k) + "]"));
        f.equations.push_back(std::move(row));
        f.rhs.push_back(rat_from_json(rhs[i], path + ".rhs[" + std::to_string(i) + "]"));
    }
    Int e = int_from_json(j.at("exponent"), path + ".exponent");
    if (e < 1 || e > 1000000) fail(path + ".exponent", "exponent out of range");
    f.exponent = e.get_si();
    return f;
}

}  // namespace

InputDocument parse_input(const Json& j) {
    if (!j.is_object()) throw ValidationError("input document must be a JSON object");
    InputDocument doc;
    doc.field = field_from_json(j);

    std::string mode = "lines";
    if (j.contains("mode")) {
        if (!j.at("mode").is_string()) fail("mode", "expected a string");
        mode = j.at("mode").get<std::string>();
    } else if (j.contains("points")) {
        mode = "scheme";
    }

    if (mode == "scheme") {
        doc.kind = InputDocument::Kind::Scheme;
        if (!j.contains("points") || !j.at("points").is_array())
            fail("points", "expected an array of fat points");
        for (size_t i = 0; i < j.at("points").size(); ++i) {
            const Json& p = j.at("points")[i];
            const std::string path = "points[" + std::to_string(i) + "]";
            if (!p.is_object() || !p.contains("x") || !p.contains("y"))
                fail(path, "expected {\"x\", \"y\"[, \"order\"]}");
            FatPoint fp;
            fp.x = element_from_json(doc.field, p.at("x"), path + ".x");
            fp.y = element_from_json(doc.field, p.at("y"), path + ".y");
            fp.order = 1;
            if (p.contains("order")) {
                Int o = int_from_json(p.at("order"), path + ".order");
                if (o < 1 || o > 1000) fail(path + ".order", "order out of range");
                fp.order = o.get_si();
            }
            doc.scheme.points.push_back(std::move(fp));
        }
        return doc;
    }

    doc.kind = InputDocument::Kind::Curve;
    doc.curve.field = doc.field;
    if (mode == "lines") {
        doc.curve.mode = CurveMode::Lines;
        if (!j.contains("lines") || !j.at("lines").is_array() || j.at("lines").empty())
            fail("lines", "expected a nonempty array of coefficient triples");
        for (size_t i = 0; i < j.at("lines").size(); ++i) {
            const Json& l = j.at("lines")[i];
            const std::string path = "lines[" + std::to_string(i) + "]";
            if (!l.is_array() || l.size() != 3) fail(path, "expected a coefficient triple");
            std::vector<FieldElement> c;
            for (int k = 0; k < 3; ++k)
                c.push_back(element_from_json(doc.field, l[k], path + "[" + std::to_string(k) + "]"));
            try {
                doc.curve.lines.push_back(make_line(doc.field, std::move(c)));
            } catch (const ValidationError& e) {
                fail(path, e.what());
            }
            doc.curve.degrees.push_back(1);
        }
        return doc;
    }
    if (mode != "components") fail("mode", "unknown mode \"" + mode + "\"");

    doc.curve.mode = CurveMode::Components;
    if (!j.contains("components") || !j.at("components").is_array() || j.at("components").empty())
        fail("components", "expected a nonempty array of {\"degree\"}");
    for (size_t i = 0; i < j.at("components").size(); ++i) {
        const Json& c = j.at("components")[i];
        const std::string path = "components[" + std::to_string(i) + "]";
        if (!c.is_object() || !c.contains("degree")) fail(path, "expected {\"degree\"}");
        Int d = int_from_json(c.at("degree"), path + ".degree");
        if (d < 1 || d > 1000) fail(path + ".degree", "degree out of range");
        doc.curve.degrees.push_back(d.get_si());
    }
    if (j.contains("singular_points")) {
        if (!j.at("singular_points").is_array())
            fail("singular_points", "expected an array");
        for (size_t i = 0; i < j.at("singular_points").size(); ++i) {
            const Json& s = j.at("singular_points")[i];
            const std::string path = "singular_points[" + std::to_string(i) + "]";
            if (!s.is_object() || !s.contains("point") || !s.contains("branches"))
                fail(path, "expected {\"point\", \"type\", \"branches\"}");
            SingularPointSpec spec;
            const Json& pt = s.at("point");
            if (!pt.is_array() || pt.size() != 3) fail(path + ".point", "expected (x:y:z)");
            for (int k = 0; k < 3; ++k)
                spec.point.push_back(element_from_json(doc.field, pt[k],
                                                       path + ".point[" + std::to_string(k) + "]"));
            spec.type = s.contains("type") ? sing_type_from_json(s.at("type"), path + ".type")
                                           : SingType::Ordinary;
            const Json& br = s.at("branches");
            if (!br.is_array() || br.empty()) fail(path + ".branches", "expected an array");
            for (size_t k = 0; k < br.size(); ++k) {
                Int b = int_from_json(br[k], path + ".branches[" + std::to_string(k) + "]");
                if (b < 0 || b >= Int(doc.curve.r()))
                    fail(path + ".branches[" + std::to_string(k) + "]",
                         "component index out of range");
                spec.branches.push_back(static_cast<int>(b.get_si()));
            }
            if (spec.type == SingType::Custom) {
                if (!s.contains("faces") || !s.at("faces").is_array() || s.at("faces").empty())
                    fail(path + ".faces", "custom type requires a nonempty face array");
                for (size_t k = 0; k < s.at("faces").size(); ++k)
                    spec.custom_faces.push_back(
                        local_face_from_json(doc.field, s.at("faces")[k],
                                             path + ".faces[" + std::to_string(k) + "]",
                                             spec.branches.size()));
            } else if (s.contains("faces")) {
                fail(path + ".faces", "faces are only accepted with type \"custom\"");
            }
            doc.curve.sing.push_back(std::move(spec));
        }
    }
    return doc;
}

InputDocument parse_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    return parse_input(j);
}

QuotientCover parse_quotient(const Json& j, int r) {
    if (!j.is_object() || !j.contains("orders") || !j.contains("matrix"))
        throw ValidationError("quotient document must contain \"orders\" and \"matrix\"");
    QuotientCover cover;
    const Json& ords = j.at("orders");
    if (!ords.is_array() || ords.empty()) fail("orders", "expected a nonempty array");
    for (size_t i = 0; i < ords.size(); ++i) {
        Int n = int_from_json(ords[i], "orders[" + std::to_string(i) + "]");
        if (n < 1) fail("orders[" + std::to_string(i) + "]", "orders must be >= 1");
        cover.orders.push_back(n);
    }
    const Json& m = j.at("matrix");
    const int q = static_cast<int>(cover.orders.size());
    if (!m.is_array() || static_cast<int>(m.size()) != q)
        fail("matrix", "expected one row per order");
    cover.q = IntMatrix(q, r);
    for (int i = 0; i < q; ++i) {
        const std::string path = "matrix[" + std::to_string(i) + "]";
        if (!m[i].is_array() || static_cast<int>(m[i].size()) != r)
            fail(path, "expected one entry per curve component");
        for (int k = 0; k < r; ++k)
            cover.q.at(i, k) = int_from_json(m[i][k], path + "[" + std::to_string(k) + "]");
    }
    return cover;
}

QuotientCover parse_quotient_file(const std::string& path, int r) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open quotient file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("malformed quotient JSON: ") + e.what());
    }
    return parse_quotient(j, r);
}

Json field_to_json(const FieldPtr& field) {
    Json f;
    f["generator"] = field->generator();
    Json poly = Json::array();
    for (const Int& c : field->min_poly()) poly.push_back(c.get_str());
    f["min_poly"] = poly;
    f["irreducibility_checked"] = field->irreducibility_checked();
    return f;
}

Json element_to_json(const FieldElement& x) {
    if (x.field()->is_rational()) return rat_str(x.rational_value());
    Json a = Json::array();
    for (const Rat& c : x.coeffs()) a.push_back(rat_str(c));
    return a;
}

Json document_to_json(const InputDocument& doc) {
    Json j;
    if (!doc.field->is_rational()) {
        Json f;
        f["generator"] = doc.field->generator();
        Json poly = Json::array();
        for (const Int& c : doc.field->min_poly()) poly.push_back(c.get_str());
        f["min_poly"] = poly;
        j["field"] = f;
    }
    if (doc.kind == InputDocument::Kind::Scheme) {
        j["mode"] = "scheme";
        Json pts = Json::array();
        for (const FatPoint& p : doc.scheme.points) {
            Json pj;
            pj["x"] = element_to_json(p.x);
            pj["y"] = element_to_json(p.y);
            pj["order"] = p.order;
            pts.push_back(pj);
        }
        j["points"] = pts;
        return j;
    }
    if (doc.curve.mode == CurveMode::Lines) {
        j["mode"] = "lines";
        Json lines = Json::array();
        for (const ProjLine& l : doc.curve.lines) {
            Json lj = Json::array();
            for (const FieldElement& c : l.c) lj.push_back(element_to_json(c));
            lines.push_back(lj);
        }
        j["lines"] = lines;
        return j;
    }
    j["mode"] = "components";
    Json comps = Json::array();
    for (long d : doc.curve.degrees) comps.push_back(Json{{"degree", d}});
    j["components"] = comps;
    Json sings = Json::array();
    for (const SingularPointSpec& s : doc.curve.sing) {
        Json sj;
        Json pt = Json::array();
        for (const FieldElement& c : s.point) pt.push_back(element_to_json(c));
        sj["point"] = pt;
        switch (s.type) {
            case SingType::Ordinary: sj["type"] = "ordinary"; break;
            case SingType::Cusp: sj["type"] = "cusp"; break;
            case SingType::Tacnode: sj["type"] = "tacnode"; break;
            case SingType::Custom: sj["type"] = "custom"; break;
        }
        sj["branches"] = s.branches;
        if (s.type == SingType::Custom) {
            Json faces = Json::array();
            for (const LocalFaceDescriptor& f : s.custom_faces) {
                Json fj;
                Json eq = Json::array();
                for (const auto& row : f.equations) {
                    Json rj = Json::array();
                    for (const Rat& x : row) rj.push_back(rat_str(x));
                    eq.push_back(rj);
                }
                fj["equations"] = eq;
                Json rhs = Json::array();
                for (const Rat& x : f.rhs) rhs.push_back(rat_str(x));
                fj["rhs"] = rhs;
                fj["exponent"] = f.exponent;
                faces.push_back(fj);
            }
            sj["faces"] = faces;
        }
        sings.push_back(sj);
    }
    j["singular_points"] = sings;
    return j;
}

Json curve_summary_json(const Curve& curve, const Incidence& inc) {
    Json j;
    j["mode"] = curve.mode == CurveMode::Lines ? "lines" : "components";
    j["r"] = curve.r();
    j["degrees"] = curve.degrees;
    j["total_degree"] = curve.total_degree();
    j["field"] = field_to_json(curve.field);
    Json verts = Json::array();
    for (const Vertex& v : inc.vertices) {
        Json vj;
        Json pt = Json::array();
        for (const FieldElement& c : v.point) pt.push_back(element_to_json(c));
        vj["point"] = pt;
        vj["components"] = v.branch_comps;
        vj["multiplicity"] = v.mult();
        verts.push_back(vj);
    }
    j["vertices"] = verts;
    return j;
}

Json face_to_json(const FaceResult& fr) {
    const QFace& f = fr.face;
    Json j;
    j["subcurve"] = f.comps;
    Json sj = Json::array();
    for (const auto& [v, c] : f.s) sj.push_back(Json{{"vertex", v}, {"choice", c}});
    j["s"] = sj;
    j["dim"] = f.dim;
    Json w = Json::array();
    for (const Rat& x : f.witness) w.push_back(rat_str(x));
    j["witness"] = w;
    j["level_constant"] = f.level_constant;
    if (f.level_constant) j["level"] = rat_str(f.level);
    j["contributing"] = f.contributing;
    j["order"] = f.order.get_str();
    if (fr.has_coh) {
        j["twist"] = fr.twist;
        j["h0"] = fr.coh.h0;
        j["chi"] = fr.coh.chi;
        j["h1"] = fr.coh.h1;
        Json sc = Json::array();
        for (const auto& [vi, e] : f.scheme) sc.push_back(Json{{"vertex", vi}, {"exponent", e}});
        j["scheme"] = sc;
    }
    return j;
}

Json component_to_json(const TorusComponent& comp) {
    Json j;
    j["support"] = comp.support;
    Json rows = Json::array();
    for (int i = 0; i < comp.rows.rows; ++i) {
        Json row = Json::array();
        for (int k = 0; k < comp.rows.cols; ++k) row.push_back(comp.rows.at(i, k).get_str());
        rows.push_back(row);
    }
    j["rows"] = rows;
    Json beta = Json::array();
    for (const Rat& b : comp.beta) beta.push_back(rat_str(b));
    j["beta"] = beta;
    j["dim"] = comp.dim;
    j["depth"] = comp.depth;
    j["essential"] = comp.essential;
    j["canonical"] = comp.canon;
    Json prov;
    prov["subcurve"] = mask_components(comp.prov_mask);
    prov["face"] = comp.prov_face;
    j["provenance"] = prov;
    return j;
}

Json analysis_to_json(const Analysis& an) {
    Json j;
    j["curve"] = curve_summary_json(an.curve, an.inc);
    j["fast"] = an.fast;
    Json faces = Json::array();
    for (uint32_t mask : an.masks)
        for (const FaceResult& fr : an.faces.at(mask)) faces.push_back(face_to_json(fr));
    j["faces"] = faces;
    Json comps = Json::array();
    for (const TorusComponent& c : an.components) comps.push_back(component_to_json(c));
    j["components"] = comps;
    j["warnings"] = an.warnings;
    return j;
}

Json resonance_to_json(const std::vector<ResonanceComponent>& comps) {
    Json arr = Json::array();
    for (const ResonanceComponent& c : comps) {
        Json j;
        j["lines"] = c.lines;
        j["vertices"] = c.vertices;
        Json basis = Json::array();
        for (const auto& v : c.basis) {
            Json vj = Json::array();
            for (const Rat& x : v) vj.push_back(rat_str(x));
            basis.push_back(vj);
        }
        j["basis"] = basis;
        j["dim"] = c.dim;
        arr.push_back(j);
    }
    return arr;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace qav
