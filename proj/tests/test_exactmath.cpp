#include <doctest.h>

#include <functional>
#include <random>

#include "qav/linalg.hpp"
#include "qav/numberfield.hpp"
#include "qav/rational.hpp"

using namespace qav;

namespace {

FieldPtr zeta3() {
    return std::make_shared<const NumberField>("z", std::vector<Int>{1, 1, 1});
}

// the four triple-point equations of the braid/Ceva arrangement in the line
// order x, y, x+y-1, x-y, x+2y-1, 2x+y-1 (vertex triples 124, 235, 136, 456)
QMatrix ceva_system() {
    return {
        {1, 1, 0, 1, 0, 0},
        {0, 1, 1, 0, 1, 0},
        {1, 0, 1, 0, 0, 1},
        {0, 0, 0, 1, 1, 1},
    };
}

IntMatrix ceva_int() {
    QMatrix q = ceva_system();
    IntMatrix m(4, 6);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j) m.at(i, j) = Int(q[i][j]);
    return m;
}

// naive rank via determinant minors, for cross-checking gaussian elimination
Rat det_naive(const QMatrix& m) {
    const size_t n = m.size();
    if (n == 1) return m[0][0];
    Rat d = 0;
    int sign = 1;
    for (size_t i = 0; i < n; ++i) {
        QMatrix sub;
        for (size_t r = 1; r < n; ++r) {
            std::vector<Rat> row;
            for (size_t c = 0; c < n; ++c)
                if (c != i) row.push_back(m[r][c]);
            sub.push_back(row);
        }
        d += Rat(sign) * m[0][i] * det_naive(sub);
        sign = -sign;
    }
    return d;
}

int rank_by_minors(const QMatrix& m) {
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    for (int k = std::min(rows, cols); k >= 1; --k) {
        // all k x k minors
        std::vector<int> ri(k), ci(k);
        std::function<bool(int, int)> pick_cols = [&](int pos, int start) -> bool {
            if (pos == k) {
                QMatrix sub(k, std::vector<Rat>(k));
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) sub[a][b] = m[ri[a]][ci[b]];
                return det_naive(sub) != 0;
            }
            for (int c = start; c < cols; ++c) {
                ci[pos] = c;
                if (pick_cols(pos + 1, c + 1)) return true;
            }
            return false;
        };
        std::function<bool(int, int)> pick_rows = [&](int pos, int start) -> bool {
            if (pos == k) return pick_cols(0, 0);
            for (int r = start; r < rows; ++r) {
                ri[pos] = r;
                if (pick_rows(pos + 1, r + 1)) return true;
            }
            return false;
        };
        if (pick_rows(0, 0)) return k;
    }
    return 0;
}

}  // namespace

TEST_CASE("rational parsing and helpers") {
    CHECK(parse_rat("3/4") == make_rat(3, 4));
    CHECK(parse_rat("-6/8") == make_rat(-3, 4));
    CHECK(parse_rat("7") == Rat(7));
    CHECK(rat_str(make_rat(-3, 4)) == "-3/4");
    CHECK_THROWS_AS(parse_rat("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1/0"), std::domain_error);
    CHECK(floor_rat(make_rat(-1, 2)) == -1);
    CHECK(ceil_rat(make_rat(-1, 2)) == 0);
    CHECK(mod1(make_rat(-1, 3)) == make_rat(2, 3));
    CHECK(mod1(Rat(2)) == 0);
}

TEST_CASE("field arithmetic in Q and Q(zeta3)") {
    FieldPtr q = NumberField::rationals();
    FieldElement x = FieldElement::from_rational(q, make_rat(3, 4));
    CHECK(x.inv() == FieldElement::from_rational(q, make_rat(4, 3)));

    FieldPtr k = zeta3();
    FieldElement z = FieldElement::generator(k);
    // inv(z) = -1 - z because z * z^2 = 1 and z^2 = -1 - z
    CHECK(z.inv() == FieldElement(k, {Rat(-1), Rat(-1)}));
    FieldElement one = FieldElement::one(k);
    FieldElement z2 = z * z;
    CHECK((one + z) * (one + z2) == one);
    CHECK(z * z * z == one);
    CHECK((z - z).is_zero());
}

TEST_CASE("reducible minimal polynomials are rejected") {
    // x^2 - 1 has the rational root 1
    CHECK_THROWS_AS(NumberField("a", std::vector<Int>{-1, 0, 1}), std::invalid_argument);
    // x^4 + 2x^2 + 1 = (x^2+1)^2
    CHECK_THROWS_AS(NumberField("a", std::vector<Int>{1, 0, 2, 0, 1}), std::invalid_argument);
    // x^2 + 1 and x^4 + 1 are fine
    CHECK_NOTHROW(NumberField("i", std::vector<Int>{1, 0, 1}));
    CHECK_NOTHROW(NumberField("a", std::vector<Int>{1, 0, 0, 0, 1}));
}

TEST_CASE("rank and nullspace") {
    QMatrix id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto rn = rank_nullspace(id);
    CHECK(rn.rank == 3);
    CHECK(rn.nullspace.empty());

    auto ceva = rank_nullspace(ceva_system());
    CHECK(ceva.rank == 4);
    CHECK(ceva.nullspace.size() == 2);
    for (const auto& v : ceva.nullspace)
        for (const auto& row : ceva_system()) {
            Rat s = 0;
            for (int j = 0; j < 6; ++j) s += row[j] * v[j];
            CHECK(s == 0);
        }
}

TEST_CASE("rank agrees with the minor-based oracle on random matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
        QMatrix m(rows, std::vector<Rat>(cols));
        for (auto& row : m)
            for (auto& x : row) x = Rat(dist(rng));
        CHECK(rank_nullspace(m).rank == rank_by_minors(m));
    }
}

TEST_CASE("smith normal form") {
    IntMatrix d(2, 2);
    d.at(0, 0) = 2;
    d.at(1, 1) = 3;
    SmithResult s = smith_normal_form(d);
    CHECK(s.divisors == std::vector<Int>{1, 6});
    CHECK(s.gcd_maximal_minors == 6);

    SmithResult cs = smith_normal_form(ceva_int());
    CHECK(cs.rank == 4);
    CHECK(cs.gcd_maximal_minors == 2);

    IntMatrix z(2, 3);
    CHECK(smith_normal_form(z).gcd_maximal_minors == 0);
}

TEST_CASE("smith transforms are unimodular and reproduce the diagonal") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dist(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
        IntMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
        SmithResult s = smith_normal_form(m);
        CHECK((det_int(s.u) == 1 || det_int(s.u) == -1));
        CHECK((det_int(s.v) == 1 || det_int(s.v) == -1));
        IntMatrix prod = int_mat_mul(int_mat_mul(s.u, m), s.v);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                CHECK(prod.at(i, j) == (i == j ? s.divisors[i] : Int(0)));
        IntMatrix vv = int_mat_mul(s.v, s.vinv);
        for (int i = 0; i < cols; ++i)
            for (int j = 0; j < cols; ++j) CHECK(vv.at(i, j) == (i == j ? 1 : 0));
        // divisibility chain
        for (size_t i = 0; i + 1 < s.divisors.size(); ++i)
            if (s.divisors[i] != 0 && s.divisors[i + 1] != 0)
                CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
    }
}

TEST_CASE("row lattice saturation") {
    IntMatrix m(1, 3);
    m.at(0, 0) = m.at(0, 1) = m.at(0, 2) = 2;
    IntMatrix s = saturate_row_lattice(m);
    CHECK(s.rows == 1);
    CHECK((s.at(0, 0) == 1 || s.at(0, 0) == -1));
    CHECK(s.at(0, 0) == s.at(0, 1));
    CHECK(s.at(0, 1) == s.at(0, 2));

    IntMatrix cs = saturate_row_lattice(ceva_int());
    CHECK(cs.rows == 4);
    CHECK(smith_normal_form(cs).gcd_maximal_minors == 1);

    IntMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
    IntMatrix sid = saturate_row_lattice(id);
    CHECK(sid.rows == 3);
    CHECK(smith_normal_form(sid).gcd_maximal_minors == 1);
}

TEST_CASE("hermite row form") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 3), cols = 1 + static_cast<int>(rng() % 4);
        IntMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
        auto [h, u] = hermite_row(m);
        CHECK((det_int(u) == 1 || det_int(u) == -1));
        IntMatrix prod = int_mat_mul(u, m);
        CHECK(prod == h);
        // echelon with positive pivots
        int last = -1;
        for (int i = 0; i < h.rows; ++i) {
            int lead = -1;
            for (int j = 0; j < h.cols; ++j)
                if (h.at(i, j) != 0) {
                    lead = j;
                    break;
                }
            if (lead < 0) continue;
            CHECK(lead > last);
            CHECK(h.at(i, lead) > 0);
            last = lead;
        }
    }
}

TEST_CASE("integer linear systems") {
    // 2x = 3 has no integer solution
    IntMatrix a(1, 1);
    a.at(0, 0) = 2;
    CHECK(!solve_integer(a, {Int(3)}));
    CHECK(solve_integer(a, {Int(4)}));
    auto sol = solve_integer(a, {Int(4)});
    CHECK(sol->particular == std::vector<Int>{2});

    // x + y = 1: kernel rank 1
    IntMatrix b(1, 2);
    b.at(0, 0) = b.at(0, 1) = 1;
    auto sb = solve_integer(b, {Int(1)});
    REQUIRE(sb.has_value());
    CHECK(sb->particular[0] + sb->particular[1] == 1);
    CHECK(sb->kernel.cols == 1);
    CHECK(sb->kernel.at(0, 0) + sb->kernel.at(1, 0) == 0);
}

TEST_CASE("affine rational systems") {
    auto sol = solve_affine(ceva_system(), {Rat(1), Rat(1), Rat(1), Rat(1)}, 6);
    REQUIRE(sol.has_value());
    CHECK(sol->dim() == 2);
    // inconsistent
    QMatrix a = {{1, 1}, {1, 1}};
    CHECK(!solve_affine(a, {Rat(0), Rat(1)}, 2));
}
