#include <doctest.h>

#include "qav/io.hpp"

using namespace qav;

namespace {

const std::string kFixtures = QAV_FIXTURE_DIR;

Curve load(const std::string& name) {
    InputDocument doc = parse_input_file(kFixtures + "/" + name);
    REQUIRE(doc.kind == InputDocument::Kind::Curve);
    return doc.curve;
}

SingularPointSpec ordinary_spec(int m) {
    SingularPointSpec spec;
    spec.type = SingType::Ordinary;
    for (int i = 0; i < m; ++i) spec.branches.push_back(i);
    return spec;
}

}  // namespace

TEST_CASE("local face catalog") {
    CHECK(local_faces(ordinary_spec(2)).empty());

    auto triple = local_faces(ordinary_spec(3));
    REQUIRE(triple.size() == 1);
    CHECK(triple[0].equations == QMatrix{{1, 1, 1}});
    CHECK(triple[0].rhs == std::vector<Rat>{Rat(1)});
    CHECK(triple[0].exponent == 1);

    auto quint = local_faces(ordinary_spec(5));
    REQUIRE(quint.size() == 3);
    for (int s = 1; s <= 3; ++s) {
        CHECK(quint[s - 1].rhs == std::vector<Rat>{Rat(s)});
        CHECK(quint[s - 1].exponent == 4 - s);
    }

    SingularPointSpec cusp;
    cusp.type = SingType::Cusp;
    cusp.branches = {0};
    auto cf = local_faces(cusp);
    REQUIRE(cf.size() == 1);
    CHECK(cf[0].rhs == std::vector<Rat>{make_rat(1, 6)});
    CHECK(cf[0].exponent == 1);

    SingularPointSpec tac;
    tac.type = SingType::Tacnode;
    tac.branches = {0, 1};
    auto tf = local_faces(tac);
    REQUIRE(tf.size() == 1);
    CHECK(tf[0].equations == QMatrix{{1, 1}});
    CHECK(tf[0].rhs == std::vector<Rat>{make_rat(1, 2)});
}

TEST_CASE("face orders") {
    // x1+x2+x3 = 1: the system is already primitive, order 1
    CHECK(face_order({{1, 1, 1}}, {Rat(1)}) == 1);
    // cusp: x = 1/6 normalizes to 6x = 1
    CHECK(face_order({{1}}, {make_rat(1, 6)}) == 6);
    // tacnode: x+y = 1/2 normalizes to 2x+2y = 1
    CHECK(face_order({{1, 1}}, {make_rat(1, 2)}) == 2);
    // braid arrangement essential face: index 2 sublattice
    QMatrix ceva = {
        {1, 1, 0, 1, 0, 0},
        {0, 1, 1, 0, 1, 0},
        {1, 0, 1, 0, 0, 1},
        {0, 0, 0, 1, 1, 1},
    };
    CHECK(face_order(ceva, {Rat(1), Rat(1), Rat(1), Rat(1)}) == 2);
}

TEST_CASE("faces of a single triple point") {
    Curve c = load("triangle.json");
    Incidence inc = build_incidence(c);
    auto faces = enumerate_faces(c, inc, 0b111u, false);
    REQUIRE(faces.size() == 1);
    const QFace& f = faces[0];
    CHECK(f.dim == 2);
    CHECK(f.level_constant);
    CHECK(f.level == 1);
    CHECK(f.contributing);
    CHECK(f.order == 1);
    CHECK(f.s.size() == 1);
    REQUIRE(f.scheme.size() == 1);
    CHECK(f.scheme[0].second == 1);
    // pairs of lines have no eligible vertex at all
    CHECK(enumerate_faces(c, inc, 0b011u, false).empty());
}

TEST_CASE("faces of four concurrent lines") {
    Curve c = load("four_lines.json");
    Incidence inc = build_incidence(c);
    auto faces = enumerate_faces(c, inc, 0b1111u, false);
    REQUIRE(faces.size() == 2);
    for (const QFace& f : faces) {
        CHECK(f.dim == 3);
        CHECK(f.level_constant);
        CHECK(f.contributing);
        CHECK(f.order == 1);
        REQUIRE(f.scheme.size() == 1);
        // exponent m-1-s = 3-level
        CHECK(f.scheme[0].second == 3 - f.level);
    }
    CHECK(((faces[0].level == 1 && faces[1].level == 2) ||
           (faces[0].level == 2 && faces[1].level == 1)));
}

TEST_CASE("the essential face of the braid arrangement") {
    Curve c = load("ceva.json");
    Incidence inc = build_incidence(c);
    auto faces = enumerate_faces(c, inc, 0b111111u, false);
    int essential = 0;
    for (const QFace& f : faces) {
        if (f.s.size() != 4) continue;  // all four triple points identically
        ++essential;
        CHECK(f.dim == 2);
        CHECK(f.level_constant);
        CHECK(f.level == 2);
        CHECK(f.contributing);
        CHECK(f.order == 2);
        CHECK(f.scheme.size() == 4);
        // the witness satisfies all four equations
        for (size_t i = 0; i < f.a.size(); ++i) {
            Rat v = -f.b[i];
            for (int j = 0; j < 6; ++j) v += f.a[i][j] * f.witness[j];
            CHECK(v == 0);
        }
    }
    CHECK(essential == 1);
}

TEST_CASE("essential faces of the dual Hesse arrangement") {
    Curve c = load("dual_hesse.json");
    Incidence inc = build_incidence(c);
    auto faces = enumerate_faces(c, inc, (1u << 9) - 1, true);
    int dim2 = 0;
    for (const QFace& f : faces) {
        if (f.dim != 2 || !f.contributing) continue;
        ++dim2;
        CHECK(f.s.size() == 9);
        CHECK(f.level == 3);
        CHECK(rank_q(f.a) == 7);
    }
    CHECK(dim2 == 4);
}

TEST_CASE("fast pruning keeps every contributing superabundant face") {
    Curve c = load("ceva.json");
    Analysis slow = analyze_curve(c, false);
    Analysis fast = analyze_curve(c, true);
    REQUIRE(slow.components.size() == fast.components.size());
    for (size_t i = 0; i < slow.components.size(); ++i) {
        CHECK(slow.components[i].canon == fast.components[i].canon);
        CHECK(slow.components[i].depth == fast.components[i].depth);
    }
}

TEST_CASE("induced local faces on subcurves") {
    Curve c = load("four_lines.json");
    Incidence inc = build_incidence(c);
    REQUIRE(inc.vertices.size() == 1);
    // a 3-line subcurve sees an ordinary triple point
    auto f3 = induced_local_faces(c, inc.vertices[0], 0b0111u, {0, 1, 2});
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].equations == QMatrix{{1, 1, 1}});
    // a 2-line subcurve sees only a node: nothing eligible
    CHECK(induced_local_faces(c, inc.vertices[0], 0b0011u, {0, 1}).empty());
}
