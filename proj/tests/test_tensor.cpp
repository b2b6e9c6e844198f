#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "loopalg/tensor.hpp"

using namespace loopalg;

namespace {

using QF = RationalField;

AlgebraPtr<QF> ctx_xy(int dx = 2, int dy = 2) {
    return make_algebra(QF{}, Alphabet({{"x", dx, GenKind::Space}, {"y", dy, GenKind::Space}}));
}

TensorElem<QF> gen(const AlgebraPtr<QF>& c, const std::string& n) {
    return TensorElem<QF>::generator(c, n);
}

// Random homogeneous element of the given dimension built from products of
// generators (words), with small rational coefficients.
TensorElem<QF> random_homog(const AlgebraPtr<QF>& c, int dim, std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(0, 1), coeff(-3, 3);
    TensorElem<QF> out(c);
    for (int tries = 0; tries < 12; ++tries) {
        Word w;
        int d = 0;
        while (d < dim) {
            std::uint8_t g = static_cast<std::uint8_t>(coin(rng));
            int gd = c->alphabet.gen(g).dim;
            if (d + gd > dim) { g = 0; gd = c->alphabet.gen(0).dim; }
            if (d + gd > dim) break;
            w.letters[w.len++] = g;
            d += gd;
        }
        if (d != dim) continue;
        int cf = coeff(rng);
        if (cf == 0) continue;
        out.axpy(c->field.one(), TensorElem<QF>::monomial(c, w, mpq_class(cf)));
    }
    return out;
}

}  // namespace

TEST_CASE("concatenation product") {
    auto c = ctx_xy();
    auto x = gen(c, "x"), y = gen(c, "y");
    CHECK(concat_product(x, y).str() == "x.y");
    CHECK(concat_product(TensorElem<QF>::zero(c), y).is_zero());
    // bilinearity: (xy - yx) . x = xyx - yxx
    auto comm = concat_product(x, y) - concat_product(y, x);
    auto prod = concat_product(comm, x);
    auto expect = concat_product(concat_product(x, y), x) - concat_product(concat_product(y, x), x);
    CHECK(prod == expect);
    CHECK(concat_product(TensorElem<QF>::unit(c), x) == x);
}

TEST_CASE("alphabet mismatch is rejected") {
    auto c1 = ctx_xy(), c2 = ctx_xy();
    CHECK_THROWS_WITH(concat_product(gen(c1, "x"), gen(c2, "y")),
                      Catch::Matchers::ContainsSubstring("alphabet mismatch"));
}

TEST_CASE("graded bracket basics") {
    auto c = ctx_xy();
    auto x = gen(c, "x"), y = gen(c, "y");
    // even-even: [x,y] = xy - yx
    CHECK(graded_bracket(x, y) == concat_product(x, y) - concat_product(y, x));
    // odd self-bracket: [a,a] = 2 a.a for |a| = 7
    auto co = make_algebra(QF{}, Alphabet({{"a", 7, GenKind::Space}}));
    auto a = TensorElem<QF>::generator(co, "a");
    auto sq = graded_bracket(a, a);
    CHECK(sq == concat_product(a, a).scaled(mpq_class(2)));
    // even self-bracket vanishes
    CHECK(graded_bracket(x, x).is_zero());
}

TEST_CASE("left-normed expansion [[x,y],x] = 2xyx - yxx - xxy") {
    auto c = ctx_xy();
    auto x = gen(c, "x"), y = gen(c, "y");
    auto v = graded_bracket(graded_bracket(x, y), x);
    auto xyx = concat_product(concat_product(x, y), x);
    auto yxx = concat_product(concat_product(y, x), x);
    auto xxy = concat_product(concat_product(x, x), y);
    CHECK(v == xyx.scaled(mpq_class(2)) - yxx - xxy);
}

TEST_CASE("bracket requires dim-homogeneous arguments") {
    auto c = make_algebra(QF{}, Alphabet({{"x", 2, GenKind::Space}, {"t", 3, GenKind::Space}}));
    auto mixed = TensorElem<QF>::generator(c, "x") + TensorElem<QF>::generator(c, "t");
    CHECK_THROWS_WITH(graded_bracket(mixed, TensorElem<QF>::generator(c, "x")),
                      Catch::Matchers::ContainsSubstring("homogeneous"));
}

TEST_CASE("graded antisymmetry and Jacobi hold identically") {
    // Mixed parities: dims 2 and 3.
    auto c = make_algebra(QF{}, Alphabet({{"x", 2, GenKind::Space}, {"y", 3, GenKind::Space}}));
    std::mt19937 rng(4242);
    auto sign = [](int d1, int d2) { return (d1 % 2) && (d2 % 2) ? -1 : 1; };
    int cases = 0;
    std::uniform_int_distribution<int> dims(2, 7);
    while (cases < 25) {
        int da = dims(rng), db = dims(rng), dc = dims(rng);
        auto a = random_homog(c, da, rng), b = random_homog(c, db, rng), e = random_homog(c, dc, rng);
        if (a.is_zero() || b.is_zero() || e.is_zero()) continue;
        ++cases;
        // [a,b] + (-1)^{|a||b|}[b,a] = 0
        if (sign(da, db) == 1) {
            CHECK((graded_bracket(a, b) + graded_bracket(b, a)).is_zero());
        } else {
            CHECK((graded_bracket(a, b) - graded_bracket(b, a)).is_zero());
        }
        // [a,[b,e]] = [[a,b],e] + (-1)^{|a||b|} [b,[a,e]]
        auto lhs = graded_bracket(a, graded_bracket(b, e));
        auto rhs = graded_bracket(graded_bracket(a, b), e) +
                   graded_bracket(b, graded_bracket(a, e)).scaled(mpq_class(sign(da, db)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("homogeneity certificates") {
    auto c = ctx_xy();
    auto x = gen(c, "x"), y = gen(c, "y");
    auto v = graded_bracket(x, y);
    REQUIRE(v.bidegree().has_value());
    CHECK(v.bidegree()->dim == 4);
    CHECK(v.bidegree()->ycount == 0);
    auto mixed = x + concat_product(x, y);
    CHECK(!mixed.bidegree().has_value());
    CHECK(!mixed.homdim().has_value());
}
