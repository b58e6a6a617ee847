#include <gtest/gtest.h>

#include "kvv/qla.hpp"
#include "properties.hpp"

using namespace kvv;
using kvv::testing::Rng;

namespace {

Rational q(const char* s) { return Rational::from_string(s); }

QMatrix from_ints(std::initializer_list<std::initializer_list<long>> rows) {
    QMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long v : r) m(i, j++) = Rational(v);
        ++i;
    }
    return m;
}

QMatrix a_n(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Rational(-2);
        if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = Rational(1);
    }
    return m;
}

} // namespace

TEST(Rational, ParsesAndPrints) {
    EXPECT_EQ(q("6/4").to_string(), "3/2");
    EXPECT_EQ(q("-4/2").to_string(), "-2");
    EXPECT_EQ(q("0").to_string(), "0");
    EXPECT_EQ(q("-1/15"), Rational(-1) / Rational(15));
    EXPECT_THROW(q("1/0"), std::invalid_argument);
    EXPECT_THROW(q("abc"), std::invalid_argument);
}

TEST(Rational, FloorRoundsTowardMinusInfinity) {
    EXPECT_EQ(q("6/5").floor(), Rational(1));
    EXPECT_EQ(q("-6/5").floor(), Rational(-2));
    EXPECT_EQ(q("-1/5").floor(), Rational(-1));
    EXPECT_EQ(q("-3").floor(), Rational(-3));
    EXPECT_EQ(q("-1/5").frac(), q("4/5"));
}

TEST(Rational, BigIntegersDoNotOverflow) {
    Rational x(1);
    for (int i = 0; i < 40; ++i) x = x * Rational(1000003);
    EXPECT_EQ((x / x), Rational(1));
    EXPECT_GT(x.to_string().size(), 200u);
}

TEST(SolveLinear, IdentityAndSmallSystem) {
    const QVector b{Rational(3), Rational(-2)};
    EXPECT_EQ(solve_linear(QMatrix::identity(2), b), b);
    const QMatrix m = from_ints({{2, 1}, {1, 3}});
    EXPECT_EQ(solve_linear(m, QVector{Rational(3), Rational(4)}), (QVector{Rational(1), Rational(1)}));
}

TEST(SolveLinear, A4ChainAgainstUnitVector) {
    // Orthogonal correction of a curve meeting the chain end once.
    const QVector x = solve_linear(a_n(4), QVector{Rational(-1), Rational(0), Rational(0), Rational(0)});
    EXPECT_EQ(x, (QVector{q("4/5"), q("3/5"), q("2/5"), q("1/5")}));
}

TEST(SolveLinear, SingularAndMismatched) {
    EXPECT_THROW(solve_linear(from_ints({{1, 2}, {2, 4}}), QVector{Rational(1), Rational(2)}), SingularMatrix);
    EXPECT_THROW(solve_linear(QMatrix(2, 3), QVector(2)), DimensionMismatch);
    EXPECT_THROW(solve_linear(QMatrix::identity(2), QVector(3)), DimensionMismatch);
}

TEST(SolveLinear, RoundTripProperty) {
    const auto r = kvv::testing::check_solve_roundtrip(400, 11);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Minors, A4Chain) {
    EXPECT_EQ(leading_principal_minors(a_n(4)), (QVector{Rational(-2), Rational(3), Rational(-4), Rational(5)}));
}

TEST(NegativeDefinite, Examples) {
    EXPECT_TRUE(is_negative_definite(a_n(4)));
    EXPECT_TRUE(is_negative_definite(from_ints({{-3}})));
    EXPECT_FALSE(is_negative_definite(from_ints({{1}})));
    EXPECT_FALSE(is_negative_definite(from_ints({{0}})));
    EXPECT_FALSE(is_negative_definite(from_ints({{-1, 1}, {1, -1}})));
    EXPECT_FALSE(is_negative_definite(from_ints({{-1, 2}, {2, -1}})));
    EXPECT_THROW(is_negative_definite(from_ints({{-1, 1}, {0, -1}})), NotSymmetric);
}

TEST(NegativeDefinite, AgreesWithLdlOracle) {
    Rng rng(3);
    int positives = 0;
    for (int t = 0; t < 3000; ++t) {
        const auto n = static_cast<std::size_t>(kvv::testing::uniform(rng, 1, 6));
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = Rational(kvv::testing::uniform(rng, -3, 0) - (t % 2 ? 1 : 0));
            for (std::size_t j = i + 1; j < n; ++j)
                m(i, j) = m(j, i) = Rational(kvv::testing::uniform(rng, 0, 3) == 0 ? kvv::testing::uniform(rng, -3, 3) : 0);
        }
        const bool oracle = kvv::testing::ldl_negative_definite(m);
        positives += oracle;
        ASSERT_EQ(is_negative_definite(m), oracle) << "trial " << t;
    }
    EXPECT_GT(positives, 100);
}

TEST(FloorRationals, Componentwise) {
    const QVector v{q("6/5"), q("-6/5"), q("1/3"), Rational(-2)};
    EXPECT_EQ(floor_rationals(v), (QVector{Rational(1), Rational(-2), Rational(0), Rational(-2)}));
    for (const auto& x : v) {
        EXPECT_LE(x.floor(), x);
        EXPECT_GT(x.floor() + Rational(1), x);
        EXPECT_TRUE(x.floor().is_integer());
    }
}

TEST(Dot, MismatchThrows) {
    EXPECT_EQ(dot(QVector{Rational(1), Rational(2)}, QVector{Rational(3), Rational(4)}), Rational(11));
    EXPECT_THROW(dot(QVector(2), QVector(3)), DimensionMismatch);
}
