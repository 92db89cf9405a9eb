#include <doctest.h>

#include "qav/io.hpp"

using namespace qav;

namespace {

const std::string kFixtures = QAV_FIXTURE_DIR;

}  // namespace

TEST_CASE("fixtures parse and validate") {
    for (const char* name : {"triangle.json", "four_lines.json", "ceva.json", "dual_hesse.json",
                             "hesse.json"}) {
        InputDocument doc = parse_input_file(kFixtures + "/" + std::string(name));
        CHECK(doc.kind == InputDocument::Kind::Curve);
        CHECK(doc.curve.mode == CurveMode::Lines);
        CHECK_NOTHROW(validate_curve(doc.curve));
    }
    for (const char* name : {"six_cusps_conic.json", "six_cusps_generic.json"}) {
        InputDocument doc = parse_input_file(kFixtures + "/" + std::string(name));
        CHECK(doc.kind == InputDocument::Kind::Curve);
        CHECK(doc.curve.mode == CurveMode::Components);
        CHECK_NOTHROW(validate_curve(doc.curve));
    }
}

TEST_CASE("round trip through document_to_json") {
    for (const char* name : {"ceva.json", "dual_hesse.json", "six_cusps_conic.json"}) {
        InputDocument doc = parse_input_file(kFixtures + "/" + std::string(name));
        InputDocument again = parse_input(document_to_json(doc));
        CHECK(again.kind == doc.kind);
        CHECK(again.curve.mode == doc.curve.mode);
        CHECK(again.curve.degrees == doc.curve.degrees);
        CHECK(again.curve.lines.size() == doc.curve.lines.size());
        // the reparsed field is a distinct object, so compare serialized forms
        for (size_t i = 0; i < doc.curve.lines.size(); ++i)
            for (int k = 0; k < 3; ++k)
                CHECK(element_to_json(again.curve.lines[i].c[k]) ==
                      element_to_json(doc.curve.lines[i].c[k]));
        CHECK(again.curve.sing.size() == doc.curve.sing.size());
        for (size_t i = 0; i < doc.curve.sing.size(); ++i) {
            CHECK(again.curve.sing[i].type == doc.curve.sing[i].type);
            CHECK(again.curve.sing[i].branches == doc.curve.sing[i].branches);
        }
        // idempotent serialization
        CHECK(document_to_json(again) == document_to_json(doc));
    }
}

TEST_CASE("rationals accept strings and integers, reject junk") {
    Json ok = {{"mode", "lines"},
               {"lines", {{1, 0, 0}, {0, "1", 0}, {"1/1", "-1", "0"}}}};
    InputDocument doc = parse_input(ok);
    CHECK(doc.curve.r() == 3);

    Json bad = ok;
    bad["lines"][0][0] = "1/0";
    CHECK_THROWS_AS(parse_input(bad), ValidationError);
    bad["lines"][0][0] = "x";
    CHECK_THROWS_AS(parse_input(bad), ValidationError);
    bad["lines"][0][0] = 1.5;
    CHECK_THROWS_AS(parse_input(bad), ValidationError);
}

TEST_CASE("field declarations") {
    Json j = {{"field", {{"generator", "w"}, {"min_poly", {"1", "1", "1"}}}},
              {"mode", "lines"},
              {"lines", {{1, 0, 0}, {0, 1, 0}, {{"0", "1"}, {"0", "1"}, 1}}}};
    InputDocument doc = parse_input(j);
    CHECK(doc.field->degree() == 2);
    CHECK(doc.field->irreducibility_checked());
    CHECK_NOTHROW(validate_curve(doc.curve));

    // reducible polynomial
    Json bad = j;
    bad["field"]["min_poly"] = {"-1", "0", "1"};
    CHECK_THROWS_AS(parse_input(bad), ValidationError);
    // coefficient array longer than the degree
    bad = j;
    bad["lines"][2][0] = {"0", "1", "1"};
    CHECK_THROWS_AS(parse_input(bad), ValidationError);
    // coefficient arrays are rejected over Q
    Json overq = {{"mode", "lines"}, {"lines", {{{"1", "2"}, 0, 0}, {0, 1, 0}}}};
    CHECK_THROWS_AS(parse_input(overq), ValidationError);
}

TEST_CASE("malformed documents fail with exit-2 errors") {
    CHECK_THROWS_AS(parse_input(Json::array()), ValidationError);
    CHECK_THROWS_AS(parse_input(Json{{"mode", "nonsense"}}), ValidationError);
    CHECK_THROWS_AS(parse_input(Json{{"mode", "lines"}}), ValidationError);
    CHECK_THROWS_AS(parse_input(Json{{"mode", "lines"}, {"lines", Json::array()}}),
                    ValidationError);
    CHECK_THROWS_AS(parse_input(Json{{"mode", "components"}}), ValidationError);
    CHECK_THROWS_AS(parse_input_file(kFixtures + "/does_not_exist.json"), ValidationError);

    // faces on a non-custom singularity
    Json j = {{"mode", "components"},
              {"components", {{{"degree", 6}}}},
              {"singular_points",
               {{{"point", {1, 1, 1}},
                 {"type", "cusp"},
                 {"branches", {0}},
                 {"faces", Json::array()}}}}};
    CHECK_THROWS_AS(parse_input(j), ValidationError);
    // custom without faces
    j["singular_points"][0]["type"] = "custom";
    CHECK_THROWS_AS(parse_input(j), ValidationError);
    // branch index out of range
    j["singular_points"][0].erase("faces");
    j["singular_points"][0]["type"] = "ordinary";
    j["singular_points"][0]["branches"] = {0, 3};
    CHECK_THROWS_AS(parse_input(j), ValidationError);
}

TEST_CASE("scheme documents") {
    Json j = {{"points",
               {{{"x", "1/2"}, {"y", 3}},
                {{"x", 0}, {"y", 0}, {"order", 2}}}}};
    InputDocument doc = parse_input(j);
    REQUIRE(doc.kind == InputDocument::Kind::Scheme);
    REQUIRE(doc.scheme.points.size() == 2);
    CHECK(doc.scheme.points[0].order == 1);
    CHECK(doc.scheme.points[1].order == 2);
    CHECK(doc.scheme.points[0].x.rational_value() == make_rat(1, 2));

    Json bad = j;
    bad["points"][1]["order"] = 0;
    CHECK_THROWS_AS(parse_input(bad), ValidationError);
}

TEST_CASE("quotient documents") {
    Json j = {{"orders", {5, 5}}, {"matrix", {{1, 0, -1}, {0, 1, -1}}}};
    QuotientCover cover = parse_quotient(j, 3);
    CHECK(cover.orders == std::vector<Int>{5, 5});
    CHECK(cover.q.at(0, 2) == -1);
    CHECK_THROWS_AS(parse_quotient(j, 4), ValidationError);
    CHECK_THROWS_AS(parse_quotient(Json{{"orders", {0}}, {"matrix", {{1, 1, 1}}}}, 3),
                    ValidationError);
    CHECK_THROWS_AS(parse_quotient(Json{{"orders", {2}}}, 3), ValidationError);
}

TEST_CASE("reports are deterministic") {
    InputDocument doc = parse_input_file(kFixtures + "/ceva.json");
    Analysis a = analyze_curve(doc.curve, false);
    Analysis b = analyze_curve(doc.curve, false);
    CHECK(dump_report(analysis_to_json(a)) == dump_report(analysis_to_json(b)));
    std::string text = dump_report(analysis_to_json(a));
    CHECK(text.back() == '\n');
    // rationals are serialized as strings
    Json j = analysis_to_json(a);
    CHECK(j.at("components")[0].at("beta")[0].is_string());
    CHECK(j.at("faces")[0].at("witness")[0].is_string());
}
