#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace specrec;
using namespace specrec::oracle;

TEST(IntersectionOracle, KnownValues) {
    Intersections tau;
    EXPECT_EQ(tau(1, {1}), Scalar(1, 24));
    EXPECT_EQ(tau(0, {0, 0, 0, 1}), Scalar(1));
    EXPECT_EQ(tau(1, {1, 1}), Scalar(1, 24));
    EXPECT_EQ(tau(2, {4}), Scalar(1, 1152));
    EXPECT_EQ(tau(3, {7}), Scalar(1, 82944));
    EXPECT_EQ(tau(2, {2, 3}), Scalar(29, 5760));
}

TEST(IntersectionOracle, AiryCorrelatorsMatch) {
    RecursionEngine e(*corpus_curve("AIRY"));
    for (int g = 0; g <= 3; ++g)
        for (int n = 1; n <= 3; ++n) {
            if (2 * g - 2 + n <= 0) continue;
            EXPECT_EQ(e.omega(g, n), airy_prediction(g, n)) << "omega(" << g << "," << n << ")";
        }
}

TEST(BruteForceOracle, Omega03Airy) {
    const auto c = airy();
    RecursionEngine e(c.curve);
    const Correlator& w = e.omega(0, 3);
    const int len = 2 * working_depth(e, 0, 3);
    for (std::size_t i = 0; i < kPoints.size(); ++i) {
        const Scalar z1 = kPoints[i], z2 = kPoints[(i + 1) % 4], z3 = kPoints[(i + 2) % 4];
        const Scalar brute = brute_w03(c, z1, z2, z3, len);
        EXPECT_EQ(brute, Scalar(1, 2) / (z1 * z1 * z2 * z2 * z3 * z3));
        EXPECT_EQ(std::get<Scalar>(correlator_eval(w, {Point(z1), Point(z2), Point(z3)})), brute);
    }
}

TEST(BruteForceOracle, Omega11Airy) {
    const auto c = airy();
    RecursionEngine e(c.curve);
    const Correlator& w = e.omega(1, 1);
    const int len = 2 * working_depth(e, 1, 1);
    for (const auto& z1 : kPoints)
        EXPECT_EQ(std::get<Scalar>(correlator_eval(w, {Point(z1)})), brute_w11(c, z1, len));
}

TEST(BruteForceOracle, Omega03C1) {
    const auto c = c1();
    RecursionEngine e(c.curve);
    const Correlator& w = e.omega(0, 3);
    const int len = 2 * working_depth(e, 0, 3);
    for (std::size_t i = 0; i < kPoints.size(); ++i) {
        const Scalar z1 = kPoints[i], z2 = kPoints[(i + 1) % 4], z3 = kPoints[(i + 3) % 4];
        EXPECT_EQ(std::get<Scalar>(correlator_eval(w, {Point(z1), Point(z2), Point(z3)})), brute_w03(c, z1, z2, z3, len));
    }
}

TEST(BruteForceOracle, Omega11C1) {
    const auto c = c1();
    RecursionEngine e(c.curve);
    const Correlator& w = e.omega(1, 1);
    const int len = 2 * working_depth(e, 1, 1);
    for (const auto& z1 : kPoints)
        EXPECT_EQ(std::get<Scalar>(correlator_eval(w, {Point(z1)})), brute_w11(c, z1, len));
}
