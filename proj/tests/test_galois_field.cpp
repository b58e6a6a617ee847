#include <gtest/gtest.h>

#include "kvv/galois_field.hpp"

using namespace kvv;

namespace {

// Evaluates c_0 + c_1 x + ... at x in F_p.
long eval_mod(const std::vector<long>& c, long x, long p) {
    long acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
    return acc;
}

// Least monic polynomial of degree 2 or 3 without roots in F_p, lexicographic
// on (c_{m-1}, ..., c_0). In these degrees no roots means irreducible.
std::vector<long> least_rootless(long p, int m) {
    long count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
        std::vector<long> c(static_cast<std::size_t>(m) + 1);
        c[static_cast<std::size_t>(m)] = 1;
        long v = idx;
        for (int i = 0; i < m; ++i) {
            c[static_cast<std::size_t>(i)] = v % p;
            v /= p;
        }
        bool root = false;
        for (long x = 0; x < p && !root; ++x) root = eval_mod(c, x, p) == 0;
        if (!root) return c;
    }
    return {};
}

} // namespace

TEST(Primes, Small) {
    EXPECT_FALSE(is_prime(0));
    EXPECT_FALSE(is_prime(1));
    EXPECT_TRUE(is_prime(2));
    EXPECT_TRUE(is_prime(5));
    EXPECT_FALSE(is_prime(9));
    EXPECT_TRUE(is_prime(97));
}

TEST(GaloisField, RejectsBadParameters) {
    EXPECT_THROW(GaloisField(4, 1), BadCharacteristic);
    EXPECT_THROW(GaloisField(5, 0), std::invalid_argument);
    EXPECT_THROW(GaloisField(5, 20), std::invalid_argument);
}

TEST(GaloisField, ModulusIsLeastIrreducible) {
    for (long p : {2L, 3L, 5L, 7L})
        for (int m : {2, 3}) EXPECT_EQ(GaloisField(p, m).modulus(), least_rootless(p, m)) << p << "^" << m;
    EXPECT_EQ(GaloisField(5, 2).modulus(), (std::vector<long>{2, 0, 1}));
    EXPECT_EQ(GaloisField(2, 2).modulus(), (std::vector<long>{1, 1, 1}));
}

TEST(GaloisField, FieldAxiomsExhaustive) {
    for (auto [p, m] : {std::pair{2L, 1}, {2L, 3}, {3L, 2}, {5L, 1}, {5L, 2}, {7L, 2}}) {
        const GaloisField F(p, m);
        const auto q = F.order();
        for (std::uint32_t i = 0; i < q; ++i) {
            const GFElement a = F.element(i);
            EXPECT_EQ(F.add(a, F.neg(a)), F.zero());
            EXPECT_EQ(F.mul(a, F.one()), a);
            EXPECT_EQ(F.pow(a, q), a);
            if (a.v != 0) EXPECT_EQ(F.mul(a, F.inv(a)), F.one());
            for (std::uint32_t j = 0; j < q; ++j) {
                const GFElement b = F.element(j);
                ASSERT_EQ(F.mul(a, b), F.mul(b, a));
                ASSERT_EQ(F.add(a, b), F.add(b, a));
                const GFElement c = F.element((i * 7 + j * 3 + 1) % q);
                ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
                ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
            }
        }
    }
}

TEST(GaloisField, SquareRoots) {
    for (auto [p, m] : {std::pair{2L, 2}, {5L, 1}, {5L, 2}, {7L, 1}}) {
        const GaloisField F(p, m);
        int squares = 0;
        for (std::uint32_t i = 0; i < F.order(); ++i) {
            const GFElement a = F.element(i);
            if (!F.is_square(a)) {
                EXPECT_THROW(F.sqrt(a), std::domain_error);
                continue;
            }
            ++squares;
            const GFElement r = F.sqrt(a);
            EXPECT_EQ(F.mul(r, r), a);
        }
        const long expected = p == 2 ? F.order() : (F.order() + 1) / 2;
        EXPECT_EQ(squares, expected);
    }
}

TEST(GaloisField, PrimeSubfieldAndPrinting) {
    const GaloisField F(5, 2);
    EXPECT_EQ(F.from_int(-1), F.element(4));
    EXPECT_EQ(F.from_int(7), F.element(2));
    EXPECT_EQ(F.to_string(F.x()), "x");
    EXPECT_EQ(F.to_string(F.element(5 * 3 + 2)), "3*x+2");
    // x^2 = -2 in F_25 with this modulus.
    EXPECT_EQ(F.mul(F.x(), F.x()), F.from_int(-2));
}
