#include "specrec/ratfun.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace specrec;

namespace {

Poly P(std::initializer_list<long> c) {
    std::vector<Scalar> v;
    for (long x : c) v.emplace_back(x);
    return Poly(std::move(v));
}

RatFun R(std::initializer_list<long> num, std::initializer_list<long> den) { return ratfun_make(P(num), P(den)); }

struct RandomRatFun {
    std::mt19937 rng;
    explicit RandomRatFun(unsigned seed) : rng(seed) {}

    Scalar scalar() {
        std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
        Scalar q(num(rng), den(rng));
        q.canonicalize();
        return q;
    }
    Poly poly(int max_degree) {
        std::uniform_int_distribution<int> deg(0, max_degree);
        std::vector<Scalar> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : c) x = scalar();
        return Poly(std::move(c));
    }
    RatFun ratfun() {
        Poly d = poly(3);
        while (d.is_zero()) d = poly(3);
        return ratfun_make(poly(4), d);
    }
    /// Denominator split over small integer roots, so every pole is rational.
    RatFun split_ratfun() {
        std::uniform_int_distribution<int> root(-3, 3), count(0, 3);
        Poly d = Poly::constant(scalar() == 0 ? Scalar(1) : Scalar(2));
        for (int k = count(rng); k > 0; --k) d = d * Poly::linear_factor(Scalar(root(rng)));
        return ratfun_make(poly(4), d);
    }
};

} // namespace

TEST(Scalar, ParsesExactLiterals) {
    EXPECT_EQ(parse_scalar("1/3"), Scalar(1, 3));
    EXPECT_EQ(parse_scalar("-4/6"), Scalar(-2, 3));
    EXPECT_EQ(parse_scalar("+7"), Scalar(7));
    EXPECT_EQ(to_string(Scalar(0)), "0/1");
    EXPECT_EQ(to_string(parse_scalar("-6/4")), "-3/2");
}

TEST(Scalar, RejectsFloatsAndZeroDenominators) {
    for (const char* bad : {"0.5", "1e3", "", "/2", "1/", "3/0", "1/2/3", " 1"}) EXPECT_THROW(parse_scalar(bad), ParseError) << bad;
}

TEST(Scalar, RoundTripsLargeValues) {
    Scalar q(Integer("123456789012345678901234567890"), Integer("987654321098765432109"));
    q.canonicalize();
    EXPECT_EQ(parse_scalar(to_string(q)), q);
}

TEST(Poly, DivisionGcdAndSquarefree) {
    auto [q, r] = divmod(P({-1, 0, 1}), P({-1, 1}));
    EXPECT_EQ(q, P({1, 1}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(gcd(P({-1, 0, 1}), P({1, 2, 1})), P({1, 1}));
    // (z-1)^2 (z+2)
    auto f = squarefree_factors(P({-1, 1}).pow(2) * P({2, 1}));
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0], P({2, 1}));
    EXPECT_EQ(f[1], P({-1, 1}));
}

TEST(Poly, TaylorShiftAndReverse) {
    EXPECT_EQ(P({0, 0, 1}).shifted(Scalar(1)), P({1, 2, 1}));
    EXPECT_EQ(P({1, 2, 3}).reversed(2), P({3, 2, 1}));
}

TEST(RatFun, MakeReduces) {
    EXPECT_EQ(R({-1, 0, 1}, {-1, 1}), R({1, 1}, {1}));
    EXPECT_TRUE(R({0}, {0, 1}).is_zero());
    EXPECT_EQ(R({0, 2}, {2}), RatFun::z());
    EXPECT_EQ(R({0, 2}, {2}).den(), P({1}));
    EXPECT_THROW(ratfun_make(P({1}), Poly()), std::domain_error);
}

TEST(RatFun, MakeCancelsCommonFactor) {
    RandomRatFun gen(11);
    for (int i = 0; i < 50; ++i) {
        Poly p = gen.poly(3), q = gen.poly(3), g = gen.poly(2);
        if (q.is_zero() || g.is_zero()) continue;
        EXPECT_EQ(ratfun_make(p * g, q * g), ratfun_make(p, q));
    }
}

TEST(RatFun, Derivative) {
    EXPECT_EQ(derivative(R({1, 0, 1}, {0, 1})), R({-1, 0, 1}, {0, 0, 1}));
    EXPECT_TRUE(derivative(RatFun(Scalar(5))).is_zero());
    EXPECT_EQ(derivative(R({0, 0, 1}, {1})), R({0, 2}, {1}));
}

TEST(RatFun, RationalZeros) {
    auto a = rational_zeros(P({-1, 0, 1}));
    EXPECT_TRUE(a.fully_split);
    ASSERT_EQ(a.roots.size(), 2u);
    EXPECT_EQ(a.roots[0].value, Scalar(-1));
    EXPECT_EQ(a.roots[1].value, Scalar(1));
    EXPECT_EQ(a.roots[0].multiplicity, 1);

    auto b = rational_zeros(P({-2, 0, 1}));
    EXPECT_TRUE(b.roots.empty());
    EXPECT_FALSE(b.fully_split);

    auto c = rational_zeros(P({1, -2, 1}));
    ASSERT_EQ(c.roots.size(), 1u);
    EXPECT_EQ(c.roots[0].value, Scalar(1));
    EXPECT_EQ(c.roots[0].multiplicity, 2);
    EXPECT_TRUE(c.fully_split);
}

TEST(RatFun, RationalZerosNonIntegerRoots) {
    // (3z - 2)^2 (z^2 + 1) (4z + 5)
    Poly p = P({-2, 3}).pow(2) * P({1, 0, 1}) * P({5, 4});
    auto r = rational_zeros(p);
    EXPECT_FALSE(r.fully_split);
    ASSERT_EQ(r.roots.size(), 2u);
    EXPECT_EQ(r.roots[0].value, Scalar(-5, 4));
    EXPECT_EQ(r.roots[1].value, Scalar(2, 3));
    EXPECT_EQ(r.roots[1].multiplicity, 2);
}

TEST(RatFun, Evaluate) {
    const RatFun x = R({1, 0, 1}, {0, 1});
    EXPECT_EQ(evaluate(x, Point(2)).value(), Scalar(5, 2));
    EXPECT_TRUE(evaluate(x, Point::infinity()).is_infinity());
    EXPECT_EQ(evaluate(R({1}, {0, 0, 1}), Point::infinity()).value(), Scalar(0));
    EXPECT_TRUE(evaluate(x, Point(0)).is_infinity());
    EXPECT_EQ(evaluate(R({1, 0, 2}, {3, 0, 1}), Point::infinity()).value(), Scalar(2));
}

TEST(RatFun, OrderAt) {
    EXPECT_EQ(order_at(ratfun_make(P({-1, 1}).pow(3), P({0, 1})), Point(1)), 3);
    EXPECT_EQ(order_at(R({1}, {0, 1}), Point::infinity()), 1);
    EXPECT_EQ(order_at(R({0, 0, 0, 0, 1}, {1}), Point::infinity()), -4);
    EXPECT_THROW(order_at(RatFun(), Point(0)), std::domain_error);
}

TEST(Antiderivative, Examples) {
    EXPECT_EQ(residue_free_antiderivative(R({1}, {0, 0, 1})), R({-1}, {0, 1}));
    EXPECT_EQ(residue_free_antiderivative(R({0, 2}, {1, 0, -2, 0, 1})), R({-1}, {-1, 0, 1}));
    try {
        residue_free_antiderivative(R({1}, {0, 1}));
        FAIL() << "expected NonzeroResidueError";
    } catch (const NonzeroResidueError& e) {
        ASSERT_TRUE(e.pole().has_value());
        EXPECT_EQ(*e.pole(), Point(0));
        EXPECT_EQ(*e.residue(), Scalar(1));
    }
}

TEST(Antiderivative, IrrationalPoleResidue) {
    // 2z/(z^2 - 2) has residue 1 at each of +-sqrt(2)
    try {
        residue_free_antiderivative(R({0, 2}, {-2, 0, 1}));
        FAIL() << "expected NonzeroResidueError";
    } catch (const NonzeroResidueError& e) {
        EXPECT_FALSE(e.pole().has_value());
    }
}

TEST(Properties, Leibniz) {
    RandomRatFun gen(1);
    for (int i = 0; i < 100; ++i) {
        RatFun f = gen.ratfun(), g = gen.ratfun();
        EXPECT_EQ(derivative(f * g), derivative(f) * g + f * derivative(g));
    }
}

TEST(Properties, AntiderivativeOfDerivative) {
    RandomRatFun gen(2);
    for (int i = 0; i < 100; ++i) {
        RatFun f = gen.ratfun();
        RatFun G = residue_free_antiderivative(derivative(f));
        EXPECT_EQ(derivative(G), derivative(f));
        EXPECT_TRUE((G - f).is_constant());
    }
}

TEST(Properties, OrderAtIsAdditive) {
    RandomRatFun gen(3);
    const std::vector<Point> points{Point(0), Point(1), Point(-1), Point(Scalar(1, 2)), Point::infinity()};
    for (int i = 0; i < 100; ++i) {
        RatFun f = gen.split_ratfun(), g = gen.split_ratfun();
        if (f.is_zero() || g.is_zero()) continue;
        for (const auto& p : points) EXPECT_EQ(order_at(f * g, p), order_at(f, p) + order_at(g, p));
    }
}
