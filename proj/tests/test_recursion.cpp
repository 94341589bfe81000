#include "specrec/io.hpp"
#include "specrec/recursion.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <thread>

using namespace specrec;

namespace {

Poly P(std::initializer_list<long> c) {
    std::vector<Scalar> v;
    for (long x : c) v.emplace_back(x);
    return Poly(std::move(v));
}

RatFun R(std::initializer_list<long> num, std::initializer_list<long> den) { return ratfun_make(P(num), P(den)); }

SpectralCurve curve(const char* name) { return *corpus_curve(name); }

SlotKey key(std::initializer_list<int> orders) {
    SlotKey k;
    for (int o : orders) k.push_back(BasisElem{0, static_cast<std::uint16_t>(o)});
    return k;
}

bool symmetric(const Correlator& w) {
    std::vector<int> perm(static_cast<std::size_t>(w.n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (!(permuted(w, perm) == w)) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

} // namespace

TEST(Omega01, Examples) {
    EXPECT_EQ(omega01(curve("AIRY")), R({0, 0, 2}, {1}));
    EXPECT_EQ(omega01(curve("C1")), R({-4, 0, 3, 0, 1}, {0, 0, 0, 1}));
    for (const auto& c : corpus()) EXPECT_EQ(omega01(c) + omega01(swap(c)), derivative(c.x * c.y)) << c.name;
}

TEST(Omega02Transition, Airy) {
    const auto sigma = involution_deviation(R({0, 0, 1}, {1}), Point(0), 10);
    const auto tr = omega02_transition(sigma, 6);
    EXPECT_TRUE(tr[0].is_zero());
    // 2z/(z1^2 - z^2) = sum over odd j of 2 z^j / z1^{j+1}
    for (int j = 1; j <= 6; ++j) {
        for (int e = 0; e < tr[static_cast<std::size_t>(j)].trunc(); ++e)
            EXPECT_EQ(tr[static_cast<std::size_t>(j)].coeff(e), Scalar(j % 2 == 1 && e == j ? 2 : 0)) << j << " " << e;
    }
}

TEST(Omega02Transition, GeometricSeriesTerm) {
    // t^j - sigma^j starts with t^j (1 - (-1)^j)
    const auto sigma = involution_deviation(R({1, 0, 1}, {0, 1}), Point(1), 10);
    const auto tr = omega02_transition(sigma, 5);
    for (int j = 1; j <= 5; ++j) EXPECT_EQ(tr[static_cast<std::size_t>(j)].coeff(j), Scalar(j % 2 == 1 ? 2 : 0));
}

TEST(Kernel, AiryDenominator) {
    const auto c = curve("AIRY");
    const auto sigma = involution_deviation(c.x, Point(0), 10);
    const auto d = kernel_denominator(c, sigma);
    EXPECT_EQ(d.min_exp(), 2);
    for (int e = 2; e < d.trunc(); ++e) EXPECT_EQ(d.coeff(e), Scalar(e == 2 ? 4 : 0));
}

TEST(Kernel, AiryMatchesClosedForm) {
    // -dz1 / (4 z (z1^2 - z^2)) = -1/4 sum_k z^{2k-1} / z1^{2k+2}
    const auto c = curve("AIRY");
    const auto k = kernel_expansion(c, branchpoints(c).at(0), 12);
    EXPECT_EQ(k.by_order.at(1).min_exp(), -1);
    EXPECT_EQ(k.coefficient(-1, 2), Scalar(-1, 4));
    for (int m = 2; m <= 10; ++m)
        for (int e = -1; e < 6; ++e) {
            const bool hit = m % 2 == 0 && e == m - 3;
            EXPECT_EQ(k.coefficient(e, m), hit ? Scalar(-1, 4) : Scalar(0)) << m << " " << e;
        }
}

TEST(Kernel, DenominatorOrderIsTwoOnCorpus) {
    for (const auto& c : corpus())
        for (const auto& b : branchpoints(c)) {
            const auto sigma = involution_deviation(c.x, b.location, 8);
            EXPECT_EQ(kernel_denominator(c, sigma).min_exp(), 2) << c.name;
        }
}

TEST(Omega, AiryLowLevels) {
    RecursionEngine e(curve("AIRY"));
    const auto& w03 = e.omega(0, 3);
    ASSERT_EQ(w03.coeffs.size(), 1u);
    EXPECT_EQ(w03.coeffs.at(key({2, 2, 2})), Scalar(1, 2));
    const auto& w11 = e.omega(1, 1);
    ASSERT_EQ(w11.coeffs.size(), 1u);
    EXPECT_EQ(w11.coeffs.at(key({4})), Scalar(1, 16));
}

TEST(Omega, EmptyBranchpointSetGivesZero) {
    RecursionEngine e(swap(curve("AIRY")));
    EXPECT_TRUE(e.branch_locations().empty());
    for (int g = 0; g <= 3; ++g)
        for (int n = 1; n <= 3; ++n)
            if (2 * g - 2 + n > 0) {
                EXPECT_TRUE(e.omega(g, n).is_zero());
            }
}

TEST(Omega, RejectsUnstableLevels) {
    RecursionEngine e(curve("AIRY"));
    EXPECT_THROW(e.omega(0, 2), std::invalid_argument);
    EXPECT_THROW(e.omega(0, 1), std::invalid_argument);
    EXPECT_THROW(e.omega(1, 0), std::invalid_argument);
    EXPECT_THROW(RecursionEngine(SpectralCurve("c", R({0, 0, 0, 1}, {1}), R({0, 1}, {1}))), CurveValidationError);
}

TEST(CorrelatorEval, Examples) {
    RecursionEngine e(curve("AIRY"));
    const auto& w03 = e.omega(0, 3);
    EXPECT_EQ(std::get<RatFun>(correlator_eval(w03, {std::nullopt, Point(1), Point(1)})), R({1}, {0, 0, 2}));
    EXPECT_EQ(std::get<Scalar>(correlator_eval(w03, {Point(1), Point(1), Point(1)})), Scalar(1, 2));
    EXPECT_EQ(std::get<Scalar>(correlator_eval(w03, {Point(1), Point(2), Point::infinity()})), Scalar(0));
    EXPECT_EQ(one_point_function(e.omega(1, 1)), R({1}, {0, 0, 0, 0, 16}));
    Correlator zero{1, 1, {Point(0)}, {}};
    EXPECT_TRUE(one_point_function(zero).is_zero());
    EXPECT_THROW(correlator_eval(w03, {Point(0), Point(1), Point(1)}), PoleEvaluationError);
    EXPECT_THROW(correlator_eval(w03, {std::nullopt, std::nullopt, Point(1)}), std::invalid_argument);
}

TEST(Correlator, StructuralInvariantsOnCorpus) {
    for (const auto& c : corpus()) {
        for (const auto& side : {c, swap(c)}) {
            RecursionEngine e(side);
            for (int g = 0; g <= 2; ++g)
                for (int n = 1; n <= 3; ++n) {
                    if (2 * g - 2 + n <= 0 || (g == 2 && n == 3)) continue;
                    const Correlator& w = e.omega(g, n);
                    EXPECT_TRUE(symmetric(w)) << side.name << " " << g << "," << n;
                    EXPECT_LE(w.max_order(), 6 * g + 2 * n - 4);
                    for (const auto& [k, coef] : w.coeffs)
                        for (const auto& b : k) EXPECT_GE(b.order, 2);
                    if (n == 1 && !w.is_zero()) {
                        for (const auto& a : e.branch_locations())
                            EXPECT_EQ(differential_residue(one_point_function(w), a), Scalar(0));
                    }
                }
        }
    }
}

TEST(Correlator, StableUnderDeeperTruncation) {
    RecursionEngine e(curve("C1"), EngineOptions{4, true});
    e.omega(2, 1);
    e.omega(1, 3);
    const auto records = e.records();
    EXPECT_FALSE(records.empty());
    for (const auto& r : records) {
        EXPECT_TRUE(r.stability_checked);
        EXPECT_TRUE(r.stable) << r.g << "," << r.n;
    }
}

TEST(Correlator, SmallerGuardGivesSameResult) {
    RecursionEngine a(curve("C4"), EngineOptions{0, false});
    RecursionEngine b(curve("C4"), EngineOptions{8, false});
    EXPECT_EQ(a.omega(2, 1), b.omega(2, 1));
    EXPECT_EQ(a.omega(1, 2), b.omega(1, 2));
}

TEST(Engine, ConcurrentLookups) {
    RecursionEngine e(curve("C1"));
    std::vector<Correlator> got(4);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < got.size(); ++i) threads.emplace_back([&, i] { got[i] = e.omega(2, 1); });
    for (auto& t : threads) t.join();
    for (const auto& w : got) EXPECT_EQ(w, got.front());
    RecursionEngine serial(curve("C1"));
    EXPECT_EQ(got.front(), serial.omega(2, 1));
}
