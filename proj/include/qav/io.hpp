#pragma once

#include <string>

#include <json.hpp>

#include "qav/charvariety.hpp"
#include "qav/covers.hpp"
#include "qav/resonance.hpp"
#include "qav/sheafcoh.hpp"

namespace qav {

using Json = nlohmann::json;

// Parsed input file: either a curve (lines/components mode) or a fat-point
// scheme document for the superabundance command.
struct InputDocument {
    enum class Kind { Curve, Scheme };
    Kind kind = Kind::Curve;
    FieldPtr field;
    Curve curve;
    FatPointScheme scheme;
};

InputDocument parse_input(const Json& j);
InputDocument parse_input_file(const std::string& path);

QuotientCover parse_quotient(const Json& j, int r);
QuotientCover parse_quotient_file(const std::string& path, int r);

// round-trip serialization of the parsed document
Json document_to_json(const InputDocument& doc);

// ---- report fragments (deterministic: objects are key-sorted, arrays are
// emitted in canonical orders) ----

Json field_to_json(const FieldPtr& field);
Json element_to_json(const FieldElement& x);
Json curve_summary_json(const Curve& curve, const Incidence& inc);
Json face_to_json(const FaceResult& fr);
Json component_to_json(const TorusComponent& comp);
Json analysis_to_json(const Analysis& an);
Json resonance_to_json(const std::vector<ResonanceComponent>& comps);

std::string dump_report(const Json& report);

}  // namespace qav
