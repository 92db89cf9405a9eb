#include <doctest.h>

#include "qav/io.hpp"

using namespace qav;

namespace {

const std::string kFixtures = QAV_FIXTURE_DIR;

Analysis analyze(const std::string& name) {
    InputDocument doc = parse_input_file(kFixtures + "/" + name);
    REQUIRE(doc.kind == InputDocument::Kind::Curve);
    return analyze_curve(doc.curve, false);
}

// reference computation: r plus the depth of every nontrivial character of
// prod Z/n, by direct membership tests
Int unbranched_oracle(const Analysis& an, long n) {
    const int r = an.curve.r();
    Int b = r;
    std::vector<long> k(r, 0);
    while (true) {
        bool nonzero = false;
        for (long ks : k) nonzero = nonzero || ks != 0;
        if (nonzero) {
            CharacterExp omega(r);
            for (int j = 0; j < r; ++j) omega[j] = make_rat(k[j], n);
            b += depth_at(an.components, omega);
        }
        int pos = r - 1;
        while (pos >= 0 && ++k[pos] == n) k[pos--] = 0;
        if (pos < 0) break;
    }
    return b;
}

}  // namespace

TEST_CASE("triangle cover invariants") {
    Analysis an = analyze("triangle.json");
    for (long n = 2; n <= 7; ++n) {
        std::vector<Int> orders(3, Int(n));
        // points of the open simplex slice with denominator n
        Int expect = Int((n - 1) * (n - 2) / 2);
        CHECK(irregularity(an, orders) == expect);
        CHECK(betti_branched(an, orders) == 2 * expect);
        // all characters with integral coordinate sum except the identity
        CHECK(betti_unbranched(an, orders) == n * n + 2);
    }
    CHECK(betti_unbranched(an, {5, 5, 5}) == 27);
    CHECK(milnor_b1(an) == 4);
    CHECK(unbranched_oracle(an, 2) == 6);
    CHECK(unbranched_oracle(an, 3) == betti_unbranched(an, {3, 3, 3}));
    // mixed orders agree with the direct face count
    CHECK(irregularity(an, {2, 3, 6}) == betti_branched(an, {2, 3, 6}) / 2);
    CHECK_THROWS_AS(irregularity(an, {0, 1, 1}), ValidationError);
    CHECK_THROWS_AS(irregularity(an, {2, 2}), ValidationError);
}

TEST_CASE("four concurrent lines cover invariants") {
    Analysis an = analyze("four_lines.json");
    std::vector<Int> o3(4, Int(3));
    CHECK(irregularity(an, o3) == 10);
    CHECK(betti_branched(an, o3) == 20);
    CHECK(milnor_b1(an) == 9);
    CHECK(betti_unbranched(an, std::vector<Int>(4, Int(2))) == unbranched_oracle(an, 2));
    CHECK(betti_unbranched(an, o3) == unbranched_oracle(an, 3));
}

TEST_CASE("braid arrangement cover invariants") {
    Analysis an = analyze("ceva.json");
    std::vector<Int> o5(6, Int(5));
    CHECK(irregularity(an, o5) == 30);
    CHECK(betti_branched(an, o5) == 60);
    CHECK(milnor_b1(an) == 7);
    // brute force over the 63 nontrivial characters of (Z/2)^6
    CHECK(betti_unbranched(an, std::vector<Int>(6, Int(2))) == unbranched_oracle(an, 2));
}

TEST_CASE("face point counts live in the relative interior") {
    Analysis an = analyze("four_lines.json");
    std::vector<Int> o3(4, Int(3));
    Int total = 0;
    long faces = 0;
    for (const auto& [mask, results] : an.faces)
        for (const FaceResult& fr : results)
            if (fr.has_coh && fr.coh.h1 > 0) {
                ++faces;
                total += face_point_count(an, fr, o3) * fr.coh.h1;
            }
    CHECK(total == 10);
    CHECK(faces == 6);  // levels 1 and 2 on the full curve, one face per triple
}

TEST_CASE("quotient covers") {
    Analysis an = analyze("ceva.json");
    // (Z/5)^6 / diagonal: gamma_i -> e_i - e_6 in (Z/5)^5
    QuotientCover cover;
    cover.orders.assign(5, Int(5));
    cover.q = IntMatrix(5, 6);
    for (int s = 0; s < 5; ++s) {
        cover.q.at(s, s) = 1;
        cover.q.at(s, 5) = -1;
    }
    std::vector<std::string> warnings;
    Int b1 = quotient_betti_branched(an, cover, &warnings);
    CHECK(warnings.empty());
    // contributing faces force an integral coordinate sum, so the quotient by
    // the diagonal sees every contributing character of the full (5,...,5) cover
    CHECK(b1 == 60);

    // the full cover expressed as a quotient reproduces betti_branched
    QuotientCover full;
    full.orders.assign(6, Int(2));
    full.q = IntMatrix(6, 6);
    for (int s = 0; s < 6; ++s) full.q.at(s, s) = 1;
    CHECK(quotient_betti_branched(an, full, nullptr) ==
          betti_branched(an, std::vector<Int>(6, Int(2))));

    // non-surjective map warns
    QuotientCover skew;
    skew.orders = {Int(4)};
    skew.q = IntMatrix(1, 6);
    skew.q.at(0, 0) = 2;
    warnings.clear();
    quotient_betti_branched(an, skew, &warnings);
    REQUIRE(warnings.size() == 1);

    // enumeration guard
    QuotientCover huge;
    huge.orders.assign(6, Int(11));
    huge.q = IntMatrix(6, 6);
    for (int s = 0; s < 6; ++s) huge.q.at(s, s) = 1;
    CHECK_THROWS_AS(quotient_betti_branched(an, huge, nullptr), UnsupportedError);
}
